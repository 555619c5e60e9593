#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chier/cli.hpp"
#include "chier/error.hpp"

namespace chier::cli {

using nlohmann::json;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError: return kParseError;
    case ErrorKind::SelfCheckFailed: return kSelfCheckFailed;
    default: return kDomainError;
  }
}

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C" in the message.
    throw Error(ErrorKind::ParseError, e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number_at(const json& v, const std::string& field) {
  if (!v.is_number()) parse_fail(field, "expected a number, got " + std::string(v.type_name()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(field, "not finite");
  return x;
}

std::size_t index_at(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    parse_fail(field, "expected a nonnegative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::vector<std::size_t> dims_at(const json& doc) {
  const json& dims = require(doc, "dims", "");
  if (!dims.is_array() || dims.empty()) parse_fail("dims", "expected a nonempty array");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::string field = "dims[" + std::to_string(k) + "]";
    const std::size_t d = index_at(dims[k], field);
    if (d == 0) parse_fail(field, "dimension must be positive");
    out.push_back(d);
  }
  return out;
}

}  // namespace

StateFile parse_state_file(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("<root>", "expected an object");

  const std::vector<std::size_t> dims = dims_at(doc);
  if (dims.size() != 2) parse_fail("dims", "expected two local dimensions");
  StateFile file;
  file.dim_a = dims[0];
  file.dim_b = dims[1];

  const bool has_amps = doc.contains("amplitudes");
  const bool has_schmidt = doc.contains("schmidt");
  if (has_amps == has_schmidt) {
    parse_fail("amplitudes|schmidt", "exactly one of 'amplitudes' or 'schmidt' is required");
  }

  if (has_amps) {
    const json& amps = doc["amplitudes"];
    if (!amps.is_array()) parse_fail("amplitudes", "expected an array");
    std::vector<AmplitudeEntry> entries;
    for (std::size_t n = 0; n < amps.size(); ++n) {
      const std::string where = "amplitudes[" + std::to_string(n) + "]";
      const json& a = amps[n];
      if (!a.is_object()) parse_fail(where, "expected an object");
      AmplitudeEntry e;
      e.i = index_at(require(a, "i", where), where + ".i");
      e.j = index_at(require(a, "j", where), where + ".j");
      const double re = number_at(require(a, "re", where), where + ".re");
      const double im = a.contains("im") ? number_at(a["im"], where + ".im") : 0.0;
      e.value = {re, im};
      entries.push_back(e);
    }
    file.amplitudes = std::move(entries);
  } else {
    const json& sch = doc["schmidt"];
    if (!sch.is_array() || sch.empty()) parse_fail("schmidt", "expected a nonempty array");
    if (sch.size() > std::min(file.dim_a, file.dim_b)) {
      parse_fail("schmidt", std::to_string(sch.size()) +
                                " coefficients do not fit dims " + std::to_string(file.dim_a) +
                                "x" + std::to_string(file.dim_b));
    }
    std::vector<double> coeffs;
    for (std::size_t n = 0; n < sch.size(); ++n) {
      coeffs.push_back(number_at(sch[n], "schmidt[" + std::to_string(n) + "]"));
    }
    file.schmidt = std::move(coeffs);
  }
  return file;
}

PureState to_state(const StateFile& file, bool renormalize) {
  if (file.amplitudes) {
    return PureState::from_amplitudes(file.dim_a, file.dim_b, *file.amplitudes, renormalize);
  }
  const std::vector<double>& coeffs = *file.schmidt;
  if (coeffs.size() == file.dim_a && coeffs.size() == file.dim_b) {
    return PureState::from_schmidt(coeffs, renormalize);
  }
  // Fewer coefficients than the local dimensions: sum_i c_i |ii> in dA x dB.
  std::vector<AmplitudeEntry> entries;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] < 0.0) {
      throw Error(ErrorKind::NegativeCoefficient,
                  "Schmidt coefficient " + std::to_string(coeffs[i]));
    }
    entries.push_back({i, i, Complex(coeffs[i], 0.0)});
  }
  return PureState::from_amplitudes(file.dim_a, file.dim_b, entries, renormalize);
}

PureState parse_state_text(std::string_view text, bool renormalize) {
  return to_state(parse_state_file(text), renormalize);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PureState parse_state(const std::filesystem::path& path, bool renormalize) {
  const std::string text = read_file(path);
  try {
    return parse_state_text(text, renormalize);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

TwoQubitDensity parse_density_text(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("<root>", "expected an object");
  const std::vector<std::size_t> dims = dims_at(doc);
  if (dims.size() != 1 || dims[0] != 4) parse_fail("dims", "two-qubit density needs dims [4]");
  const json& m = require(doc, "matrix", "");
  if (!m.is_array() || m.size() != 16) parse_fail("matrix", "expected 16 [re, im] entries");
  std::vector<Complex> entries;
  for (std::size_t n = 0; n < 16; ++n) {
    const std::string where = "matrix[" + std::to_string(n) + "]";
    const json& z = m[n];
    if (z.is_number()) {
      entries.emplace_back(number_at(z, where), 0.0);
      continue;
    }
    if (!z.is_array() || z.size() != 2) parse_fail(where, "expected [re, im]");
    entries.emplace_back(number_at(z[0], where + "[0]"), number_at(z[1], where + "[1]"));
  }
  return TwoQubitDensity(ComplexMatrix(4, 4, std::move(entries)));
}

TwoQubitDensity parse_density(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_density_text(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

json state_document(const PureState& state) {
  json amps = json::array();
  for (std::size_t i = 0; i < state.dim_a(); ++i)
    for (std::size_t j = 0; j < state.dim_b(); ++j) {
      const Complex z = state.amplitude(i, j);
      if (z == Complex{}) continue;
      amps.push_back({{"i", i}, {"j", j}, {"re", z.real()}, {"im", z.imag()}});
    }
  return {{"dims", {state.dim_a(), state.dim_b()}}, {"amplitudes", std::move(amps)}};
}

json density_document(const ComplexMatrix& rho) {
  json m = json::array();
  for (const Complex& z : rho.entries()) m.push_back({z.real(), z.imag()});
  return {{"dims", {rho.rows()}}, {"matrix", std::move(m)}};
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double x, int digits) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace chier::cli
