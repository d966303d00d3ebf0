#include <cmath>

#include "quermass/verify.hpp"

namespace quermass {

namespace {

double bellman_term(std::span<const double> a, double p) {
    double s = std::pow(a[0], p);
    for (std::size_t k = 1; k < a.size(); ++k) s -= std::pow(a[k], p);
    return s;
}

}  // namespace

double bellman_check(std::span<const double> a, std::span<const double> b, double p) {
    if (a.size() != b.size() || a.size() < 2) throw GeometryError(ErrorKind::HypothesisViolated, "sequences must have equal length >= 2");
    if (!(p > 1.0)) throw GeometryError(ErrorKind::HypothesisViolated, "p must exceed 1");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[k] > 0.0) || !(b[k] > 0.0)) throw GeometryError(ErrorKind::HypothesisViolated, "entries must be positive");
    const double ta = bellman_term(a, p);
    const double tb = bellman_term(b, p);
    if (!(ta > 0.0) || !(tb > 0.0)) throw GeometryError(ErrorKind::HypothesisViolated, "a1^p - sum ai^p must be positive");
    std::vector<double> ab(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) ab[k] = a[k] + b[k];
    const double tab = bellman_term(ab, p);
    return std::pow(tab, 1.0 / p) - std::pow(ta, 1.0 / p) - std::pow(tb, 1.0 / p);
}

double scalar_lemma4_check(double a, double b, double c, double d, double alpha) {
    if (!(a > 0 && b > 0 && c > 0 && d > 0)) throw GeometryError(ErrorKind::HypothesisViolated, "a, b, c, d must be positive");
    if (!(a > b) || !(c > d)) throw GeometryError(ErrorKind::HypothesisViolated, "need a > b and c > d");
    if (!(alpha > 0.0 && alpha < 1.0)) throw GeometryError(ErrorKind::HypothesisViolated, "alpha must lie in (0, 1)");
    const double beta = 1.0 - alpha;
    return std::pow(a, alpha) * std::pow(c, beta) - std::pow(b, alpha) * std::pow(d, beta) -
           std::pow(a - b, alpha) * std::pow(c - d, beta);
}

}  // namespace quermass
