#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "platelim/expression.hpp"
#include "platelim/geometry.hpp"

namespace platelim {

// Symmetric curvature tensor stored as (k11, k22, k12).
using Kappa = std::array<double, 3>;

inline double frobenius_norm(const Kappa& k) {
    return std::sqrt(k[0] * k[0] + k[1] * k[1] + 2.0 * k[2] * k[2]);
}

// Pointwise bending strength, either uniform or an expression in x1, x2.
class StrengthField {
  public:
    StrengthField() = default;
    static StrengthField constant(double value) {
        StrengthField f;
        f.constant_ = value;
        return f;
    }
    static StrengthField expression(const std::string& text) {
        StrengthField f;
        f.expr_ = std::make_shared<Expression>(Expression::parse(text));
        return f;
    }

    double eval(const Vec2& x) const { return expr_ ? expr_->eval(x.x, x.y) : constant_; }
    bool is_constant() const { return expr_ == nullptr; }
    double constant_value() const { return constant_; }
    std::string describe() const {
        return expr_ ? expr_->text() : std::to_string(constant_);
    }

  private:
    double constant_ = 1.0;
    std::shared_ptr<const Expression> expr_;
};

enum class CriterionKind { von_mises, tresca, johansen };

inline std::string to_string(CriterionKind k) {
    switch (k) {
        case CriterionKind::von_mises: return "von_mises";
        case CriterionKind::tresca: return "tresca";
        case CriterionKind::johansen: return "johansen";
    }
    return "?";
}

struct YieldCriterion {
    CriterionKind kind = CriterionKind::von_mises;
    StrengthField m0;        // von Mises / Tresca uniaxial strength
    StrengthField m0_plus;   // Johansen positive bending strength
    StrengthField m0_minus;  // Johansen negative bending strength

    static YieldCriterion von_mises(StrengthField m0) {
        return {CriterionKind::von_mises, std::move(m0), {}, {}};
    }
    static YieldCriterion tresca(StrengthField m0) {
        return {CriterionKind::tresca, std::move(m0), {}, {}};
    }
    static YieldCriterion johansen(StrengthField plus, StrengthField minus) {
        return {CriterionKind::johansen, {}, std::move(plus), std::move(minus)};
    }

    void check_positive_at(const Vec2& x) const {
        if (kind == CriterionKind::johansen) {
            if (!(m0_plus.eval(x) > 0.0) || !(m0_minus.eval(x) > 0.0))
                throw std::invalid_argument("yield strength must be positive at (" +
                                            std::to_string(x.x) + "," + std::to_string(x.y) + ")");
        } else if (!(m0.eval(x) > 0.0)) {
            throw std::invalid_argument("yield strength must be positive at (" + std::to_string(x.x) +
                                        "," + std::to_string(x.y) + ")");
        }
    }
};

// Support function pi(x, kappa) of the strength set G(x).
inline double pi_eval(const YieldCriterion& crit, const Vec2& x, const Kappa& k) {
    const double m = 0.5 * (k[0] + k[1]);
    const double r = std::hypot(0.5 * (k[0] - k[1]), k[2]);
    switch (crit.kind) {
        case CriterionKind::von_mises: {
            const double q = k[0] * k[0] + k[1] * k[1] + k[0] * k[1] + k[2] * k[2];
            return 2.0 * crit.m0.eval(x) / std::sqrt(3.0) * std::sqrt(std::max(q, 0.0));
        }
        case CriterionKind::tresca:
            return crit.m0.eval(x) * std::max(std::abs(m) + r, 2.0 * std::abs(m));
        case CriterionKind::johansen: {
            const double ki = m + r, kii = m - r;
            const double mp = crit.m0_plus.eval(x), mm = crit.m0_minus.eval(x);
            return mp * (std::max(ki, 0.0) + std::max(kii, 0.0)) +
                   mm * (std::max(-ki, 0.0) + std::max(-kii, 0.0));
        }
    }
    return 0.0;
}

// Rank-one evaluation pi(x, s nu (x) nu) for a unit normal nu. The value is
// independent of nu for these isotropic criteria.
inline double pi_edge(const YieldCriterion& crit, const Vec2& x, double s, const Vec2& nu) {
    if (std::abs(nu.squared_norm() - 1.0) > 1e-9)
        throw std::invalid_argument("pi_edge: nu must be a unit vector");
    switch (crit.kind) {
        case CriterionKind::von_mises:
            return 2.0 * crit.m0.eval(x) / std::sqrt(3.0) * std::abs(s);
        case CriterionKind::tresca:
            return crit.m0.eval(x) * std::abs(s);
        case CriterionKind::johansen:
            return crit.m0_plus.eval(x) * std::max(s, 0.0) +
                   crit.m0_minus.eval(x) * std::max(-s, 0.0);
    }
    return 0.0;
}

// Conic epigraph template for t >= pi(x, kappa). Variable slots: 0..2 are the
// kappa components, 3 is t, aux variables follow from slot 4. Cone memberships
// apply to contiguous runs of aux slots; every equality row has zero
// right-hand side (the template is positively homogeneous in kappa).
struct ConeBlock {
    struct Term {
        int slot;
        double coef;
    };
    using Row = std::vector<Term>;

    int aux_count = 0;
    std::vector<Row> equalities;
    std::vector<int> nonneg_aux;               // aux slot indices (4-based like equalities)
    std::vector<std::vector<int>> soc_groups;  // each group: ordered slots forming an SOC
};

// Exact second-order cone encodings of the three support functions.
//   von Mises: sqrt(3)/(2 M0) t >= |W kappa| as one 4-dim cone.
//   Tresca:    r >= |((k11-k22)/2, k12)|, v >= |m|, t >= M0 (v+r), t >= 2 M0 v.
//   Johansen:  kappa = P - N with P, N psd written in (trace, diff, 2 offdiag)
//              coordinates, t = M0+ tr P + M0- tr N.
inline ConeBlock emit_cone_block(const YieldCriterion& crit, const Vec2& x) {
    crit.check_positive_at(x);
    ConeBlock b;
    constexpr int kK11 = 0, kK22 = 1, kK12 = 2, kT = 3;
    auto eq = [&b](ConeBlock::Row row) { b.equalities.push_back(std::move(row)); };

    switch (crit.kind) {
        case CriterionKind::von_mises: {
            const double m0 = crit.m0.eval(x);
            const int q0 = 4, q1 = 5, q2 = 6, q3 = 7;
            b.aux_count = 4;
            b.soc_groups.push_back({q0, q1, q2, q3});
            eq({{q0, 1.0}, {kT, -std::sqrt(3.0) / (2.0 * m0)}});
            eq({{q1, 1.0}, {kK11, -1.0}, {kK22, -0.5}});
            eq({{q2, 1.0}, {kK22, -std::sqrt(3.0) / 2.0}});
            eq({{q3, 1.0}, {kK12, -1.0}});
            break;
        }
        case CriterionKind::tresca: {
            const double m0 = crit.m0.eval(x);
            const int r0 = 4, r1 = 5, r2 = 6, v = 7, s1 = 8, s2 = 9, s3 = 10, s4 = 11;
            b.aux_count = 8;
            b.soc_groups.push_back({r0, r1, r2});
            b.nonneg_aux = {s1, s2, s3, s4};
            eq({{r1, 1.0}, {kK11, -0.5}, {kK22, 0.5}});
            eq({{r2, 1.0}, {kK12, -1.0}});
            // s1 = v - m, s2 = v + m with m = (k11 + k22)/2
            eq({{s1, 1.0}, {v, -1.0}, {kK11, 0.5}, {kK22, 0.5}});
            eq({{s2, 1.0}, {v, -1.0}, {kK11, -0.5}, {kK22, -0.5}});
            // s3 = t - M0 (v + r0), s4 = t - 2 M0 v
            eq({{s3, 1.0}, {kT, -1.0}, {v, m0}, {r0, m0}});
            eq({{s4, 1.0}, {kT, -1.0}, {v, 2.0 * m0}});
            break;
        }
        case CriterionKind::johansen: {
            const double mp = crit.m0_plus.eval(x), mm = crit.m0_minus.eval(x);
            // (a, d, o) = (p11 + p22, p11 - p22, 2 p12); psd <=> a >= |(d, o)|
            const int ap = 4, dp = 5, op = 6, an = 7, dn = 8, on = 9;
            b.aux_count = 6;
            b.soc_groups.push_back({ap, dp, op});
            b.soc_groups.push_back({an, dn, on});
            eq({{kK11, 1.0}, {ap, -0.5}, {dp, -0.5}, {an, 0.5}, {dn, 0.5}});
            eq({{kK22, 1.0}, {ap, -0.5}, {dp, 0.5}, {an, 0.5}, {dn, -0.5}});
            eq({{kK12, 1.0}, {op, -0.5}, {on, 0.5}});
            eq({{kT, 1.0}, {ap, -mp}, {an, -mm}});
            break;
        }
    }
    return b;
}

namespace detail {

// Quasirandom boundary samples shared by all brute-force evaluations. Sample k
// carries the rotation angle theta_k in [0, pi) (as cos^2, sin^2, cos sin), a
// point (e1, e2) on the unit von Mises eigenvalue ellipse and a boundary
// parameter u2 in [0, 1). The sequence is prefix-stable so the running
// maximum over the first n samples is monotone in n.
struct BoundarySample {
    double c2, s2, cs;
    double e1, e2;
    double u2;
};

inline const std::vector<BoundarySample>& boundary_samples(size_t n) {
    thread_local std::vector<BoundarySample> cache;
    if (cache.size() < n) {
        const size_t old = cache.size();
        cache.resize(n);
        constexpr double kAlpha1 = 0.7548776662466927;  // R2 sequence (plastic constant)
        constexpr double kAlpha2 = 0.5698402909980532;
        for (size_t k = old; k < n; ++k) {
            const double u1 = std::fmod(0.5 + kAlpha1 * static_cast<double>(k + 1), 1.0);
            const double u2 = std::fmod(0.5 + kAlpha2 * static_cast<double>(k + 1), 1.0);
            const double theta = M_PI * u1;
            const double c = std::cos(theta), s = std::sin(theta);
            const double phi = 2.0 * M_PI * u2;
            BoundarySample& smp = cache[k];
            smp.c2 = c * c;
            smp.s2 = s * s;
            smp.cs = c * s;
            smp.e1 = std::cos(phi) + std::sin(phi) / std::sqrt(3.0);
            smp.e2 = std::cos(phi) - std::sin(phi) / std::sqrt(3.0);
            smp.u2 = u2;
        }
    }
    return cache;
}

inline void polygon_boundary_point(const std::vector<std::array<double, 2>>& verts, double t,
                                   double& m1, double& m2) {
    const size_t nv = verts.size();
    const double scaled = t * static_cast<double>(nv);
    size_t i = std::min(static_cast<size_t>(scaled), nv - 1);
    const double local = scaled - static_cast<double>(i);
    const auto& a = verts[i];
    const auto& b = verts[(i + 1) % nv];
    m1 = (1.0 - local) * a[0] + local * b[0];
    m2 = (1.0 - local) * a[1] + local * b[1];
}

}  // namespace detail

// Structured lower estimate of pi(x, kappa): maximum of M : kappa over n
// samples of the yield-surface boundary (moment eigenvalues on the criterion
// boundary, rotated through theta in [0, pi)). Monotone in n and never above
// pi(x, kappa) beyond rounding.
inline double brute_force_pi(const YieldCriterion& crit, const Vec2& x, const Kappa& kappa, size_t n) {
    if (n < 1) throw std::invalid_argument("brute_force_pi: n must be >= 1");
    const auto& samples = detail::boundary_samples(n);

    std::vector<std::array<double, 2>> verts;
    double m0 = 0.0, mp = 0.0, mm = 0.0;
    switch (crit.kind) {
        case CriterionKind::von_mises:
            m0 = crit.m0.eval(x);
            break;
        case CriterionKind::tresca:
            m0 = crit.m0.eval(x);
            verts = {{m0, 0.0}, {m0, m0}, {0.0, m0}, {-m0, 0.0}, {-m0, -m0}, {0.0, -m0}};
            break;
        case CriterionKind::johansen:
            mp = crit.m0_plus.eval(x);
            mm = crit.m0_minus.eval(x);
            verts = {{mp, mp}, {-mm, mp}, {-mm, -mm}, {mp, -mm}};
            break;
    }

    double best = 0.0;  // M = 0 lies in G
    for (size_t k = 0; k < n; ++k) {
        const auto& smp = samples[k];
        double m1, m2;
        if (crit.kind == CriterionKind::von_mises) {
            m1 = m0 * smp.e1;
            m2 = m0 * smp.e2;
        } else if (k % 2 == 1) {
            const auto& v = verts[(k / 2) % verts.size()];
            m1 = v[0];
            m2 = v[1];
        } else {
            detail::polygon_boundary_point(verts, smp.u2, m1, m2);
        }
        const double mxx = m1 * smp.c2 + m2 * smp.s2;
        const double myy = m1 * smp.s2 + m2 * smp.c2;
        const double mxy = (m1 - m2) * smp.cs;
        best = std::max(best, mxx * kappa[0] + myy * kappa[1] + 2.0 * mxy * kappa[2]);
    }
    return best;
}

// Measured coercivity constants: min and max of pi(x, kappa)/|kappa|_F over
// the given points and a fixed set of 64 Frobenius-unit curvature directions.
inline std::pair<double, double> coercivity_bounds(const YieldCriterion& crit,
                                                   const std::vector<Vec2>& points) {
    if (points.empty()) throw std::invalid_argument("coercivity_bounds: no sample points");
    constexpr int kDirections = 64;
    std::vector<Kappa> dirs;
    dirs.reserve(kDirections);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < kDirections; ++i) {
        // Fibonacci sphere direction, third component scaled so |kappa|_F = 1.
        const double z = 1.0 - 2.0 * (i + 0.5) / kDirections;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double ang = 2.0 * M_PI * std::fmod(i / golden, 1.0);
        dirs.push_back({rho * std::cos(ang), rho * std::sin(ang), z / std::sqrt(2.0)});
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const Vec2& x : points) {
        crit.check_positive_at(x);
        for (const Kappa& d : dirs) {
            const double ratio = pi_eval(crit, x, d);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    return {lo, hi};
}

}  // namespace platelim
