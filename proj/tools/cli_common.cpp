#include "cli_common.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqm/errors.hpp"

namespace cli {

using sqm::ValidationError;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ValidationError("not a finite number: '" + s + "'");
  return v;
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_primitive()) return v.dump();
  std::string s = v.dump();
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

void Emitter::open(const Common& c) {
  csv_ = c.csv;
  seed_ = c.seed;
  if (!c.out.empty()) {
    file_.open(c.out, std::ios::out | std::ios::trunc);
    if (!file_) throw ValidationError("cannot open output file " + c.out);
    os_ = &file_;
  }
}

void Emitter::emit(Json rec) {
  if (!rec.contains("seed")) rec["seed"] = seed_;
  ++n_;
  if (rec.contains("pass") && !rec["pass"].get<bool>() && !rec.value("expected_failure", false)) ++failures_;
  if (!csv_) {
    *os_ << rec.dump() << '\n';
    return;
  }
  std::vector<std::string> keys;
  for (const auto& [k, v] : rec.items()) keys.push_back(k);
  if (keys != header_) {
    header_ = keys;
    for (std::size_t i = 0; i < keys.size(); ++i) *os_ << (i ? "," : "") << keys[i];
    *os_ << '\n';
  }
  std::size_t i = 0;
  for (const auto& [k, v] : rec.items()) *os_ << (i++ ? "," : "") << csv_cell(v);
  *os_ << '\n';
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "flat key=value file; command-line options take precedence");
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--tol", c.tol, "acceptance tolerance override")->check(CLI::PositiveNumber);
  auto* json = sub->add_flag("--json", "JSON-lines output (default)");
  auto* csv = sub->add_flag("--csv", c.csv, "CSV output");
  json->excludes(csv);
}

std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& subcommands) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  if (sub == args.end()) return args;
  std::string path;
  for (auto it = sub + 1; it != args.end(); ++it) {
    if (*it == "--config" && it + 1 != args.end()) path = *(it + 1);
    else if (it->rfind("--config=", 0) == 0) path = it->substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path);
  std::vector<std::string> extra;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw ValidationError(path + ":" + std::to_string(lineno) + ": empty key");
    if (key == "config") continue;
    if (value == "true" || value == "false") {
      if (value == "true") extra.push_back("--" + key);
      continue;
    }
    extra.push_back("--" + key + "=" + value);
  }
  args.insert(sub + 1, extra.begin(), extra.end());
  return args;
}

Json cj(sqm::cplx z) { return Json::array({z.real(), z.imag()}); }

Json vec_json(const sqm::RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(to_double(t));
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& t : split(s, ',')) {
    const double v = to_double(t);
    if (v < 0 || v != std::floor(v)) throw ValidationError("not a non-negative integer: '" + t + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

sqm::IntervalSet parse_intervals(const std::string& s) {
  std::vector<sqm::IntervalSet::Interval> iv;
  for (const auto& t : split(s, ',')) {
    const auto c = t.find(':');
    if (c == std::string::npos) throw ValidationError("interval must be lo:hi, got '" + t + "'");
    iv.push_back({to_double(trim(t.substr(0, c))), to_double(trim(t.substr(c + 1)))});
  }
  if (iv.empty()) throw ValidationError("empty interval list");
  return sqm::IntervalSet(std::move(iv));
}

std::vector<sqm::IntervalSet> parse_regions(const std::string& s) {
  std::vector<sqm::IntervalSet> out;
  for (const auto& t : split(s, ';')) out.push_back(parse_intervals(t));
  return out;
}

std::vector<sqm::Vec3> parse_directions(const std::string& s) {
  std::vector<sqm::Vec3> out;
  for (const auto& t : split(s, ';')) {
    const auto c = parse_doubles(t);
    if (c.size() != 3) throw ValidationError("direction needs three components: '" + t + "'");
    sqm::Vec3 n(c[0], c[1], c[2]);
    if (n.norm() < 1e-12) throw ValidationError("zero direction");
    out.push_back(n.normalized());
  }
  return out;
}

std::vector<sqm::Region> parse_caps(const std::string& s) {
  std::vector<sqm::Region> out;
  for (const auto& t : split(s, ';')) {
    if (t == "all") {
      out.push_back(sqm::Region::all());
      continue;
    }
    const auto c = parse_doubles(t);
    if (c.size() != 3) throw ValidationError("cap needs theta,phi,alpha: '" + t + "'");
    out.push_back(sqm::Region::cap(sqm::direction(c[0], c[1]), c[2]));
  }
  return out;
}

std::vector<sqm::FieldFactor> parse_factors(const std::string& s) {
  std::vector<sqm::FieldFactor> out;
  for (const auto& t : split(s, ';')) {
    const auto at = t.find('@');
    if (at == std::string::npos) throw ValidationError("field factor must be a,b@lo:hi, got '" + t + "'");
    const auto ab = parse_doubles(t.substr(0, at));
    if (ab.size() != 2) throw ValidationError("field direction needs a,b: '" + t + "'");
    sqm::RealVector v(2);
    v << ab[0], ab[1];
    out.push_back({v, parse_intervals(t.substr(at + 1))});
  }
  return out;
}

std::vector<std::vector<std::size_t>> parse_index_sets(const std::string& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& t : split(s, ';')) out.push_back(parse_sizes(t));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& s, char sep) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : split(s, ',')) {
    const auto c = t.find(sep);
    if (c == std::string::npos) throw ValidationError(std::string("pair must be i") + sep + "j, got '" + t + "'");
    const auto a = parse_sizes(t.substr(0, c));
    const auto b = parse_sizes(t.substr(c + 1));
    if (a.size() != 1 || b.size() != 1) throw ValidationError("bad pair '" + t + "'");
    out.emplace_back(a[0], b[0]);
  }
  return out;
}

}  // namespace cli
