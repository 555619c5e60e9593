#include <cmath>

#include "chier/cli.hpp"
#include "chier/error.hpp"

namespace chier::cli::fixtures {

namespace {

PureState diagonal_from_probabilities(std::initializer_list<double> probs) {
  std::vector<double> coeffs;
  for (double p : probs) coeffs.push_back(std::sqrt(p));
  return PureState::from_schmidt(coeffs);
}

}  // namespace

PureState nielsen_source() { return diagonal_from_probabilities({0.5, 0.4, 0.1}); }

PureState nielsen_target() { return diagonal_from_probabilities({0.6, 0.2, 0.2}); }

PureState dominating_source() { return diagonal_from_probabilities({0.55, 0.3, 0.15}); }

PureState bell_in_qutrits() { return diagonal_from_probabilities({0.5, 0.5, 0.0}); }

PureState qutrit_family(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "family parameter " + std::to_string(x));
  }
  return diagonal_from_probabilities({x / 2.0, x / 2.0, 1.0 - x});
}

double unit_entropy_root(double tol) {
  const auto f = [](double x) { return std::pow(x, x) * std::pow(2.0 * (1.0 - x), 1.0 - x) - 1.0; };
  return bisect_root(f, 0.01, 0.49, tol);
}

std::optional<PureState> by_name(std::string_view name) {
  if (name == "psi" || name == "phi-prime") return nielsen_source();
  if (name == "phi") return nielsen_target();
  if (name == "psi-prime") return dominating_source();
  if (name == "bell") return diagonal_from_probabilities({0.5, 0.5});
  if (name == "bell3") return bell_in_qutrits();
  if (name == "phi-third") return qutrit_family(1.0 / 3.0);
  if (name == "phi-root") return qutrit_family(unit_entropy_root());
  if (name == "product") return diagonal_from_probabilities({1.0, 0.0, 0.0});
  return std::nullopt;
}

std::vector<std::string_view> names() {
  return {"psi", "phi", "psi-prime", "phi-prime", "bell", "bell3", "phi-third", "phi-root",
          "product"};
}

}  // namespace chier::cli::fixtures
