#include "symrd/spec_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "symrd/error.hpp"

namespace symrd {
namespace {

constexpr std::array<const char*, 4> kSigmaKeys = {"sigma_x_sq", "rho_x", "sigma_z_sq", "rho_z"};
constexpr std::array<const char*, 4> kEigenKeys = {"lambda_x", "gamma_x", "lambda_y", "gamma_y"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool contains(const auto& keys, const std::string& k) {
  for (const char* key : keys) {
    if (k == key) return true;
  }
  return false;
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ParseError(what + ": '" + t + "' is not a finite number");
  }
  return v;
}

Model parse_spec(std::istream& in, const std::string& source) {
  std::map<std::string, std::pair<double, int>> values;
  std::string line;
  int lineno = 0;
  const auto where = [&](int n) { return source + ":" + std::to_string(n) + ": "; };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where(lineno) + "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key != "L" && !contains(kSigmaKeys, key) && !contains(kEigenKeys, key)) {
      throw ParseError(where(lineno) + "unknown key '" + key + "'");
    }
    if (values.count(key)) {
      throw ParseError(where(lineno) + "duplicate key '" + key + "' (first on line " +
                       std::to_string(values[key].second) + ")");
    }
    values[key] = {parse_double(val, where(lineno) + key), lineno};
  }

  if (!values.count("L")) throw ParseError(source + ": missing key 'L'");
  const double Ld = values["L"].first;
  if (Ld != std::floor(Ld) || Ld < 2 || Ld > 1e9) {
    throw ParseError(where(values["L"].second) + "L must be an integer >= 2");
  }
  const int L = static_cast<int>(Ld);

  int sigma_count = 0, eigen_count = 0;
  for (const char* k : kSigmaKeys) sigma_count += static_cast<int>(values.count(k));
  for (const char* k : kEigenKeys) eigen_count += static_cast<int>(values.count(k));
  if (sigma_count > 0 && eigen_count > 0) {
    throw ParseError(source + ": mixes (sigma, rho) keys with eigenvalue keys; use one form");
  }
  const auto& keys = eigen_count > 0 ? kEigenKeys : kSigmaKeys;
  for (const char* k : keys) {
    if (!values.count(k)) throw ParseError(source + ": missing key '" + std::string(k) + "'");
  }

  try {
    if (eigen_count > 0) {
      return Model::from_eigenvalues(L, values["lambda_x"].first, values["gamma_x"].first, values["lambda_y"].first,
                                     values["gamma_y"].first);
    }
    SourceSpec spec;
    spec.L = L;
    spec.sigma_x_sq = values["sigma_x_sq"].first;
    spec.rho_x = values["rho_x"].first;
    spec.sigma_z_sq = values["sigma_z_sq"].first;
    spec.rho_z = values["rho_z"].first;
    return Model::from_spec(spec);
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

Model parse_spec_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_spec(in, source);
}

Model load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return parse_spec(in, path);
}

}  // namespace symrd
