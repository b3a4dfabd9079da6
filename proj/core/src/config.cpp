#include "vspectra/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace vspectra {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + s + "'");
  }
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3)
        throw ConfigError(line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "expected key=value, got '" + s + "'");
    if (section.empty())
      throw ConfigError(line, "key=value before any [section]");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    auto [it, inserted] = cfg.sections_[section].emplace(key, val);
    (void)it;
    if (!inserted)
      throw ConfigError(line, "duplicate key '" + key + "' in [" + section + "]");
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_string(buf.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end())
    throw std::out_of_range("config: missing section [" + section + "]");
  const auto k = s->second.find(key);
  if (k == s->second.end())
    throw std::out_of_range("config: missing key '" + key + "' in [" + section + "]");
  return k->second;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_double(get(section, key), 0);
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int_or(const std::string& section, const std::string& key,
                       int fallback) const {
  if (!has(section, key)) return fallback;
  return static_cast<int>(get_double(section, key));
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

std::string Config::echo() const {
  std::ostringstream os;
  for (const auto& [sec, kv] : sections_) {
    os << "[" << sec << "]\n";
    for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
  }
  return os.str();
}

PressureLaw parse_pressure_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t p = s.find(sep, start);
      out.push_back(s.substr(start, p - start));
      if (p == std::string::npos) break;
      start = p + 1;
    }
    return out;
  };
  auto num = [](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("pressure spec: bad number '" + s + "'");
    return v;
  };
  if (kind == "power") {
    const auto p = split(args, ',');
    if (p.size() != 2) throw std::invalid_argument("pressure spec: power needs c,g");
    return PressureLaw::power(num(p[0]), num(p[1]));
  }
  if (kind == "affine") {
    const auto p = split(args, ',');
    if (p.size() != 2) throw std::invalid_argument("pressure spec: affine needs c,p0");
    return PressureLaw::affine(num(p[0]), num(p[1]));
  }
  if (kind == "table") {
    std::vector<double> rho, pv;
    for (const auto& pair : split(args, ',')) {
      const auto rp = split(pair, ':');
      if (rp.size() != 2) throw std::invalid_argument("pressure spec: table needs r:p pairs");
      rho.push_back(num(rp[0]));
      pv.push_back(num(rp[1]));
    }
    return PressureLaw::table(std::move(rho), std::move(pv));
  }
  throw std::invalid_argument("pressure spec: unknown kind '" + kind + "'");
}

ModelParams model_from_config(const Config& cfg) {
  ModelParams p;
  p.alpha = cfg.get_double("model", "alpha");
  p.beta = cfg.get_double("model", "beta");
  p.mu = cfg.get_double("model", "mu");
  p.nu = cfg.get_double("model", "nu");
  p.gamma = cfg.get_double("model", "gamma");
  p.rho_bar = cfg.get_double("model", "rho_bar");
  p.pressure = parse_pressure_spec(cfg.get_or("model", "pressure", "power:1,1"));
  p.validate();
  if (!p.pressure.monotone_on(0.5 * p.rho_bar, 1.5 * p.rho_bar))
    throw std::invalid_argument("model: pressure not monotone near rho_bar");
  return p;
}

}  // namespace vspectra
