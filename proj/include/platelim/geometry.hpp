#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace platelim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

namespace detail {

// Error-free transformations (Dekker/Knuth). |a|,|b| finite doubles.
inline void two_sum(double a, double b, double& hi, double& lo) {
    hi = a + b;
    const double bv = hi - a;
    lo = (a - (hi - bv)) + (b - bv);
}

inline void two_diff(double a, double b, double& hi, double& lo) {
    hi = a - b;
    const double bv = a - hi;
    lo = (a - (hi + bv)) + (bv - b);
}

inline void two_product(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

// Grows an exact nonoverlapping expansion by one term.
inline int grow_expansion(int elen, double* e, double b, double* h) {
    double q = b;
    for (int i = 0; i < elen; ++i) {
        double hi, lo;
        two_sum(q, e[i], hi, lo);
        h[i] = lo;
        q = hi;
    }
    h[elen] = q;
    return elen + 1;
}

}  // namespace detail

// Sign of the signed area determinant of the triangle (a, b, c).
// Returns +1 (counter-clockwise), -1 (clockwise) or 0 (collinear).
// Fast filtered evaluation; falls back to exact expansion arithmetic when
// the rounded result cannot be trusted.
inline int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;

    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }
    constexpr double kFilter = 8.8872057372592798e-16;  // ~16 eps
    if (det >= kFilter * detsum || -det >= kFilter * detsum) {
        return det > 0.0 ? 1 : -1;
    }

    // Exact path: det = (axc_hi+axc_lo)(byc_hi+byc_lo) - (ayc_hi+ayc_lo)(bxc_hi+bxc_lo),
    // accumulated as an exact floating-point expansion.
    using detail::grow_expansion;
    using detail::two_diff;
    using detail::two_product;
    double axc_hi, axc_lo, ayc_hi, ayc_lo, bxc_hi, bxc_lo, byc_hi, byc_lo;
    two_diff(a.x, c.x, axc_hi, axc_lo);
    two_diff(a.y, c.y, ayc_hi, ayc_lo);
    two_diff(b.x, c.x, bxc_hi, bxc_lo);
    two_diff(b.y, c.y, byc_hi, byc_lo);

    double terms[16];
    int nterms = 0;
    auto push_product = [&terms, &nterms](double u, double v, double sign) {
        double hi, lo;
        detail::two_product(u, v, hi, lo);
        terms[nterms++] = sign * hi;
        terms[nterms++] = sign * lo;
    };
    push_product(axc_hi, byc_hi, 1.0);
    push_product(axc_hi, byc_lo, 1.0);
    push_product(axc_lo, byc_hi, 1.0);
    push_product(axc_lo, byc_lo, 1.0);
    push_product(ayc_hi, bxc_hi, -1.0);
    push_product(ayc_hi, bxc_lo, -1.0);
    push_product(ayc_lo, bxc_hi, -1.0);
    push_product(ayc_lo, bxc_lo, -1.0);

    double e[17], h[17];
    int elen = 1;
    e[0] = terms[0];
    for (int i = 1; i < nterms; ++i) {
        elen = grow_expansion(elen, e, terms[i], h);
        for (int k = 0; k < elen; ++k) e[k] = h[k];
    }
    for (int i = elen - 1; i >= 0; --i) {
        if (e[i] > 0.0) return 1;
        if (e[i] < 0.0) return -1;
    }
    return 0;
}

// Twice the signed area of triangle (a, b, c); positive if counter-clockwise.
inline double signed_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// True if p lies strictly inside the open segment (a, b).
inline bool point_in_open_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    if (orient2d(a, b, p) != 0) return false;
    if (a.x != b.x) {
        return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
    }
    return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
}

}  // namespace platelim
