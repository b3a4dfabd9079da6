#include "vspectra/io.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vspectra {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << content;
  }
  std::filesystem::rename(tmp, path);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : ncols_(columns.size()) {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  body_ = os.str();
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != ncols_) throw std::invalid_argument("csv: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    body_ += cells[i];
    body_ += (i + 1 < cells.size() ? ',' : '\n');
  }
}

void CsvWriter::add_row_numeric(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(fmt_double(v));
  add_row(s);
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::write(const std::string& path) const { atomic_write_text(path, body_); }

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& dir, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["config"] = m.config_echo;
  j["code_version"] = m.code_version;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["outputs"] = m.outputs;
  j["pass"] = m.pass;
  j["summary"] = m.summary;
  atomic_write_text(dir + "/manifest.json", j.dump(2) + "\n");
}

std::string content_hash(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf).substr(0, 12);
}

}  // namespace vspectra
