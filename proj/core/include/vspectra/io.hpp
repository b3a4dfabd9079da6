#ifndef VSPECTRA_IO_HPP
#define VSPECTRA_IO_HPP

#include <string>
#include <vector>

namespace vspectra {

#ifndef VSPECTRA_VERSION_STRING
#define VSPECTRA_VERSION_STRING "0.0.0"
#endif

inline const char* version_string() { return VSPECTRA_VERSION_STRING; }

// %.17g: round-trip exact for IEEE double
std::string fmt_double(double v);

// write-to-temp + rename, so readers never observe a partial file
void atomic_write_text(const std::string& path, const std::string& content);

/// Row-oriented CSV with 17-significant-digit numeric cells.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  void add_row_numeric(const std::vector<double>& cells);
  std::string str() const;
  void write(const std::string& path) const;  // atomic

private:
  std::size_t ncols_;
  std::string body_;
};

/// Per-run metadata. Every file a command emits is listed here and the
/// manifest itself is written last, so a complete manifest implies a
/// complete run directory.
struct RunManifest {
  std::string command;
  std::string config_echo;
  std::string code_version = version_string();
  std::string started_at;   // ISO-8601 UTC
  std::string finished_at;  // ISO-8601 UTC
  std::vector<std::string> outputs;  // paths relative to the run dir
  bool pass = true;
  std::string summary;
};

std::string iso8601_now();
void write_manifest(const std::string& dir, const RunManifest& m);

// short hex digest (FNV-1a 64) used for run-directory naming
std::string content_hash(const std::string& data);

}  // namespace vspectra

#endif
