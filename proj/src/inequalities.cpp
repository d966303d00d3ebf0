#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"
#include "quermass/verify.hpp"

namespace quermass {

namespace {

constexpr double kSnap = 1e-12;

// a - b, snapped to 0 when the two agree to rounding.
double diff(double a, double b) {
    const double d = a - b;
    return std::abs(d) <= kSnap * std::max(std::abs(a), std::abs(b)) ? 0.0 : d;
}

// Sign-preserving power, so tiny negative differences stay visible.
double spow(double x, double e) {
    if (e == 0.0) return 1.0;
    return x < 0.0 ? -std::pow(-x, e) : std::pow(x, e);
}

enum class Tier { Exact, One, Two };

double tier_value(Tier t) {
    switch (t) {
        case Tier::Exact: return 1e-9;
        case Tier::One: return 1e-4;
        case Tier::Two: return 1e-3;
    }
    return 1e-9;
}

bool uses_firey(const std::string& id) {
    return id == "lem1.eq13" || id == "lem1.eq14" || id == "thm1.eq19" || id == "thm2.eq20";
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Equality: return "equality";
        case Verdict::ViolationCandidate: return "violation_candidate";
    }
    return "unknown";
}

Verdict classify(double rel_slack, double tolerance) {
    if (!std::isfinite(rel_slack)) return Verdict::ViolationCandidate;
    if (std::abs(rel_slack) <= tolerance) return Verdict::Equality;
    return rel_slack > 0.0 ? Verdict::Holds : Verdict::ViolationCandidate;
}

const std::vector<std::string>& inequality_ids() {
    static const std::vector<std::string> ids = {
        "bm.eq1",    "bm.eq2",    "thmA.eq3",  "thmC.eq6",  "lem1.eq13", "lem1.eq14", "lem2.eq15", "lem2.eq16",
        "thm1.eq19", "thm2.eq20", "cor1.eq22", "thm3.eq23", "cor2.eq27", "thm4.eq28", "cor3.eq29", "rem3.eq34"};
    return ids;
}

std::vector<SweepEntry> default_sweep(int dim, std::span<const double> p_values) {
    const int n = dim;
    auto over_i = [&] {
        std::vector<InequalityParams> v;
        for (int i = 0; i < n; ++i) v.push_back({i, 0, 1.0});
        return v;
    };
    auto over_ip = [&] {
        std::vector<InequalityParams> v;
        for (int i = 0; i < n; ++i)
            for (double p : p_values) v.push_back({i, 0, p});
        return v;
    };
    auto over_ij = [&](int jmax) {
        std::vector<InequalityParams> v;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= jmax; ++j) v.push_back({i, j, 1.0});
        return v;
    };
    std::vector<SweepEntry> out = {
        {"bm.eq1", {{0, 0, 1.0}}},
        {"bm.eq2", over_i()},
        {"thmA.eq3", over_i()},
        {"thmC.eq6", {{0, 0, 1.0}}},
        {"lem1.eq13", over_ip()},
        {"lem1.eq14", over_ip()},
        {"lem2.eq15", over_ij(n - 2)},
        {"lem2.eq16", over_ij(n - 1)},
        {"thm1.eq19", over_ip()},
        {"thm2.eq20", over_ip()},
        {"cor1.eq22", over_i()},
        {"thm3.eq23", over_ij(n - 2)},
        {"cor2.eq27", {{0, 0, 1.0}}},
        {"thm4.eq28", over_ij(n - 2)},
    };
    if (n == 3) {
        out.push_back({"cor3.eq29", {{0, 1, 1.0}}});
        out.push_back({"rem3.eq34", {{0, 1, 1.0}}});
    }
    return out;
}

bool is_asserted(const std::string& id, int dim, const InequalityParams& q) {
    const int n = dim;
    if (id == "lem1.eq14" || id == "thm1.eq19" || id == "thm2.eq20") return n - q.i - q.p >= 0.0;
    if (id == "thm3.eq23") return q.j < n - 2;
    if (id == "thm4.eq28") return q.j < n - 1;
    if (id == "cor3.eq29") return n == 3;
    if (id == "rem3.eq34") return false;
    return true;
}

double tier_tolerance(const std::string& id, int /*dim*/, const InequalityParams& q) {
    Tier t = Tier::One;
    if (id == "bm.eq1" || id == "bm.eq2" || id == "thmA.eq3" || id == "thmC.eq6") t = Tier::Exact;
    if (id == "cor1.eq22") t = q.i == 0 ? Tier::Exact : Tier::One;
    if ((id == "lem2.eq15" || id == "thm3.eq23") && q.j >= 1) t = Tier::Two;
    return tier_value(t);
}

struct InstanceEvaluator::Impl {
    BodyPair pair;
    CheckConfig config;
    int n = 0;

    std::optional<Polytope> sum_kl, sum_dd;
    std::optional<Polytope> kc, lc, dc, dpc;
    std::optional<std::vector<Vec>> grid_kl, grid_dd;
    std::map<std::pair<int, double>, Polytope> firey;               // (outer, p)
    std::map<std::pair<int, double>, std::vector<double>> wp;       // (outer, p)
    std::map<std::pair<int, int>, Bracketed> mixed_w;               // (outer, i)
    std::map<int, double> v1;                                       // outer
    std::map<std::pair<std::string, int>, Polytope> pis;            // (slot key, j)

    const Polytope& L() const { return *pair.L; }

    const Polytope& sum(bool outer) {
        auto& slot = outer ? sum_kl : sum_dd;
        if (!slot) slot = outer ? minkowski_sum(pair.K, L()) : minkowski_sum(pair.D, pair.Dprime);
        return *slot;
    }

    const Polytope& centered(std::optional<Polytope>& slot, const Polytope& body) {
        if (!slot) slot = recentered(body);
        return *slot;
    }
    const Polytope& first_c(bool outer) { return outer ? centered(kc, pair.K) : centered(dc, pair.D); }
    const Polytope& second_c(bool outer) { return outer ? centered(lc, L()) : centered(dpc, pair.Dprime); }

    const std::vector<Vec>& grid(bool outer) {
        auto& slot = outer ? grid_kl : grid_dd;
        if (!slot) {
            const Polytope* b[] = {&first_c(outer), &second_c(outer)};
            slot = wulff_grid(n, config.grid_level, b);
        }
        return *slot;
    }

    // D and D' single points: D +_p D' is the origin and W_{p,i}(D, D') = 0.
    bool inner_points() const { return pair.D.size() == 1 && pair.Dprime.size() == 1; }

    const Polytope& firey_sum(bool outer, double p) {
        const auto key = std::make_pair(int(outer), p);
        auto it = firey.find(key);
        if (it == firey.end()) {
            Polytope body = !outer && inner_points()
                                ? point_body({}, n)
                                : firey_combine(p, 1.0, first_c(outer), 1.0, second_c(outer), grid(outer));
            it = firey.emplace(key, std::move(body)).first;
        }
        return it->second;
    }

    double w_p(bool outer, double p, int i) {
        if (!outer && inner_points()) return 0.0;
        const auto key = std::make_pair(int(outer), p);
        auto it = wp.find(key);
        if (it == wp.end()) it = wp.emplace(key, mixed_p_quermassintegrals(first_c(outer), second_c(outer), p, grid(outer))).first;
        return it->second[i];
    }

    Bracketed w_mixed(bool outer, int i) {
        const auto key = std::make_pair(int(outer), i);
        auto it = mixed_w.find(key);
        if (it == mixed_w.end()) {
            const Polytope& a = outer ? pair.K : pair.D;
            const Polytope& b = outer ? L() : pair.Dprime;
            it = mixed_w.emplace(key, mixed_quermassintegral(a, b, i, config.ball_level)).first;
        }
        return it->second;
    }

    double volume1(bool outer) {
        auto it = v1.find(int(outer));
        if (it == v1.end()) {
            const Polytope& a = outer ? pair.K : pair.D;
            const Polytope& b = outer ? L() : pair.Dprime;
            std::vector<const Polytope*> args(n - 1, &a);
            args.push_back(&b);
            it = v1.emplace(int(outer), mixed_volume(std::span<const Polytope* const>(args))).first;
        }
        return it->second;
    }

    const Polytope& body(const std::string& key) {
        if (key == "K") return pair.K;
        if (key == "L") return L();
        if (key == "D") return pair.D;
        if (key == "Dp") return pair.Dprime;
        if (key == "K+L") return sum(true);
        return sum(false);  // "D+Dp"
    }

    // Pi_j X (ball slots) for a single key, or Pi_j(X, Y) for "X,Y".
    const Polytope& pi(const std::string& key, int j) {
        const auto ck = std::make_pair(key, j);
        auto it = pis.find(ck);
        if (it != pis.end()) return it->second;
        Polytope out;
        const auto comma = key.find(',');
        if (comma == std::string::npos) {
            out = pi_i(body(key), j, config.grid_level);
        } else {
            out = mixed_projection(body(key.substr(0, comma)), body(key.substr(comma + 1)), j, config.grid_level);
        }
        return pis.emplace(ck, std::move(out)).first->second;
    }

    double W(const Polytope& b, int i) { return quermassintegral(b, i); }
    double Dw(const Polytope& a, const Polytope& b, int i) { return diff(W(a, i), W(b, i)); }
};

InstanceEvaluator::InstanceEvaluator(BodyPair pair, CheckConfig config) : impl_(std::make_unique<Impl>()) {
    impl_->pair = std::move(pair);
    impl_->config = std::move(config);
    impl_->n = impl_->pair.K.dim();
}
InstanceEvaluator::~InstanceEvaluator() = default;
InstanceEvaluator::InstanceEvaluator(InstanceEvaluator&&) noexcept = default;
InstanceEvaluator& InstanceEvaluator::operator=(InstanceEvaluator&&) noexcept = default;

const BodyPair& InstanceEvaluator::pair() const { return impl_->pair; }
const CheckConfig& InstanceEvaluator::config() const { return impl_->config; }
int InstanceEvaluator::dim() const { return impl_->n; }

InequalityReport InstanceEvaluator::check(const std::string& id, const InequalityParams& q) {
    Impl& m = *impl_;
    const int n = m.n;
    const int i = q.i;
    const int j = q.j;
    const double p = q.p;
    if (i < 0 || i > n - 1) throw GeometryError(ErrorKind::HypothesisViolated, "index i out of range");
    if (!(p >= 1.0)) throw GeometryError(ErrorKind::HypothesisViolated, "p must be at least 1");
    if (!m.pair.L) throw GeometryError(ErrorKind::HypothesisViolated, "instance has no L");
    if (!contains(m.pair.K, m.pair.D, 1e-9 * m.pair.K.diameter())) throw GeometryError(ErrorKind::HypothesisViolated, "D is not inside K");
    if (uses_firey(id) && !m.inner_points() && (m.pair.D.degenerate() || m.pair.Dprime.degenerate())) {
        throw GeometryError(ErrorKind::HypothesisViolated, "Firey combinations need bodies with interior");
    }

    InequalityReport r;
    r.inequality_id = id;
    r.dim = n;
    r.params = q;
    r.asserted = is_asserted(id, n, q);
    double unc = 0.0;
    const double ni = n - i;

    const Polytope& K = m.pair.K;
    const Polytope& L = m.L();
    const Polytope& D = m.pair.D;
    const Polytope& Dp = m.pair.Dprime;

    if (id == "bm.eq1") {
        const double e = 1.0 / n;
        r.lhs = spow(m.sum(true).volume(), e);
        r.rhs = spow(K.volume(), e) + spow(L.volume(), e);
    } else if (id == "bm.eq2") {
        const double e = 1.0 / ni;
        r.lhs = spow(m.W(m.sum(true), i), e);
        r.rhs = spow(m.W(K, i), e) + spow(m.W(L, i), e);
    } else if (id == "thmA.eq3") {
        const double e = 1.0 / ni;
        r.lhs = spow(m.Dw(m.sum(true), m.sum(false), i), e);
        r.rhs = spow(m.Dw(K, D, i), e) + spow(m.Dw(L, Dp, i), e);
    } else if (id == "thmC.eq6") {
        r.lhs = spow(diff(m.volume1(true), m.volume1(false)), n);
        r.rhs = spow(m.Dw(K, D, 0), n - 1) * m.Dw(L, Dp, 0);
    } else if (id == "lem1.eq13") {
        const double e = p / ni;
        r.lhs = spow(m.W(m.firey_sum(true, p), i), e);
        r.rhs = spow(m.W(K, i), e) + spow(m.W(L, i), e);
    } else if (id == "lem1.eq14") {
        r.lhs = spow(m.w_p(true, p, i), ni);
        r.rhs = spow(m.W(K, i), ni - p) * spow(m.W(L, i), p);
    } else if (id == "lem2.eq15") {
        if (j < 0 || j > n - 2) throw GeometryError(ErrorKind::HypothesisViolated, "j out of range");
        const double e = 1.0 / (ni * (n - j - 1));
        r.lhs = spow(m.W(m.pi("K+L", j), i), e);
        r.rhs = spow(m.W(m.pi("K", j), i), e) + spow(m.W(m.pi("L", j), i), e);
    } else if (id == "lem2.eq16") {
        if (j < 0 || j > n - 1) throw GeometryError(ErrorKind::HypothesisViolated, "j out of range");
        r.lhs = spow(m.W(m.pi("K,L", j), i), n - 1);
        r.rhs = spow(m.W(m.pi("K", 0), i), n - j - 1) * spow(m.W(m.pi("L", 0), i), j);
    } else if (id == "thm1.eq19") {
        const double e = p / ni;
        r.lhs = spow(m.Dw(m.firey_sum(true, p), m.firey_sum(false, p), i), e);
        r.rhs = spow(m.Dw(K, D, i), e) + spow(m.Dw(L, Dp, i), e);
    } else if (id == "thm2.eq20") {
        r.lhs = spow(diff(m.w_p(true, p, i), m.w_p(false, p, i)), ni);
        r.rhs = spow(m.Dw(K, D, i), ni - p) * spow(m.Dw(L, Dp, i), p);
    } else if (id == "cor1.eq22") {
        const Bracketed a = m.w_mixed(true, i);
        const Bracketed b = m.w_mixed(false, i);
        const double rhs = spow(m.Dw(K, D, i), ni - 1) * m.Dw(L, Dp, i);
        auto lhs_at = [&](double x, double y) { return spow(diff(x, y), ni); };
        r.lhs = lhs_at(a.value, b.value);
        r.rhs = rhs;
        for (double sa : {-1.0, 1.0})
            for (double sb : {-1.0, 1.0})
                unc = std::max(unc, std::abs(lhs_at(a.value + sa * a.half_width, b.value + sb * b.half_width) - r.lhs));
    } else if (id == "thm3.eq23") {
        if (j < 0 || j > n - 2) throw GeometryError(ErrorKind::HypothesisViolated, "j out of range");
        const double e = 1.0 / (ni * (n - j - 1));
        r.lhs = spow(m.Dw(m.pi("K+L", j), m.pi("D+Dp", j), i), e);
        r.rhs = spow(m.Dw(m.pi("K", j), m.pi("D", j), i), e) + spow(m.Dw(m.pi("L", j), m.pi("Dp", j), i), e);
    } else if (id == "cor2.eq27") {
        const double e = 1.0 / (n * (n - 1.0));
        r.lhs = spow(m.Dw(m.pi("K+L", 0), m.pi("D+Dp", 0), 0), e);
        r.rhs = spow(m.Dw(m.pi("K", 0), m.pi("D", 0), 0), e) + spow(m.Dw(m.pi("L", 0), m.pi("Dp", 0), 0), e);
    } else if (id == "thm4.eq28") {
        if (j < 0 || j > n - 1) throw GeometryError(ErrorKind::HypothesisViolated, "j out of range");
        r.lhs = spow(m.Dw(m.pi("K,L", j), m.pi("D,Dp", j), i), n - 1);
        r.rhs = spow(m.Dw(m.pi("K", 0), m.pi("D", 0), i), n - j - 1) * spow(m.Dw(m.pi("L", 0), m.pi("Dp", 0), i), j);
    } else if (id == "cor3.eq29" || id == "rem3.eq34") {
        if (n < 3) throw GeometryError(ErrorKind::HypothesisViolated, "needs dimension 3");
        const double e = id == "cor3.eq29" ? n - 1.0 : n;
        r.lhs = spow(m.Dw(m.pi("K,L", 1), m.pi("D,Dp", 1), 0), e);
        r.rhs = spow(m.Dw(m.pi("K", 0), m.pi("D", 0), 0), e - 1.0) * m.Dw(m.pi("L", 0), m.pi("Dp", 0), 0);
    } else {
        throw GeometryError(ErrorKind::InvalidArgument, "unknown inequality id " + id);
    }

    r.slack = diff(r.lhs, r.rhs);
    if (std::find(m.config.inject_flip.begin(), m.config.inject_flip.end(), id) != m.config.inject_flip.end()) {
        r.slack = -std::abs(r.slack) - 1.0;
    }
    const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-300});
    r.rel_slack = r.slack / scale;
    r.uncertainty = unc;
    auto ov = m.config.tolerance_overrides.find(id);
    const double tier = ov != m.config.tolerance_overrides.end() ? ov->second : tier_tolerance(id, n, q);
    r.tolerance = tier + unc / scale;
    r.verdict = classify(r.rel_slack, r.tolerance);
    return r;
}

InequalityReport check_inequality(const std::string& id, const BodyPair& instance, const InequalityParams& params,
                                  const CheckConfig& config) {
    InstanceEvaluator ev(instance, config);
    return ev.check(id, params);
}

}  // namespace quermass
