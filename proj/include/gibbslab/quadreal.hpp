#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

// Extended-precision scalar used where eigenvalue differences fall below
// double resolution (the 4-component diagnostic needs ~1e-20 absolute).
// Backed by __float128 when the compiler provides it, long double otherwise.
// Only arithmetic, comparisons and the elementary functions below are
// needed by the library, so everything is self-contained: no libquadmath.

namespace gibbslab {

#if defined(__SIZEOF_FLOAT128__)
using quad_storage = __float128;
inline constexpr double quad_epsilon_value = 1.925929944387236e-34;
#else
using quad_storage = long double;
inline constexpr double quad_epsilon_value = 1.084202172485504434e-19;
#endif

struct qreal {
    quad_storage v;

    qreal() : v(0) {}
    qreal(double d) : v(d) {}
    qreal(int i) : v(i) {}
    qreal(long long i) : v(i) {}
    explicit qreal(quad_storage q) : v(q) {}

    explicit operator double() const { return static_cast<double>(v); }

    qreal& operator+=(qreal o) { v += o.v; return *this; }
    qreal& operator-=(qreal o) { v -= o.v; return *this; }
    qreal& operator*=(qreal o) { v *= o.v; return *this; }
    qreal& operator/=(qreal o) { v /= o.v; return *this; }
};

inline qreal operator+(qreal a, qreal b) { return qreal(a.v + b.v); }
inline qreal operator-(qreal a, qreal b) { return qreal(a.v - b.v); }
inline qreal operator*(qreal a, qreal b) { return qreal(a.v * b.v); }
inline qreal operator/(qreal a, qreal b) { return qreal(a.v / b.v); }
inline qreal operator-(qreal a) { return qreal(-a.v); }
inline qreal operator+(qreal a) { return a; }

inline bool operator<(qreal a, qreal b) { return a.v < b.v; }
inline bool operator>(qreal a, qreal b) { return a.v > b.v; }
inline bool operator<=(qreal a, qreal b) { return a.v <= b.v; }
inline bool operator>=(qreal a, qreal b) { return a.v >= b.v; }
inline bool operator==(qreal a, qreal b) { return a.v == b.v; }
inline bool operator!=(qreal a, qreal b) { return a.v != b.v; }

inline double to_double(qreal a) { return static_cast<double>(a.v); }
inline double to_double(double a) { return a; }

inline qreal fabs(qreal a) { return a.v < 0 ? qreal(-a.v) : a; }
inline qreal abs(qreal a) { return fabs(a); }

inline bool isfinite(qreal a) {
    if (a.v != a.v) return false;                       // NaN
    double d = static_cast<double>(a.v);
    return !(std::isinf(d));                            // quad overflow maps to inf
}

namespace qdetail {

// digit-folded decimal constants, exact well beyond 34 digits
inline qreal from_decimal(const char* s) {
    qreal mant(0), scale(1);
    bool frac = false, neg = false;
    for (const char* p = s; *p; ++p) {
        if (*p == '-') { neg = true; continue; }
        if (*p == '.') { frac = true; continue; }
        mant = mant * qreal(10) + qreal(*p - '0');
        if (frac) scale *= qreal(10);
    }
    qreal r = mant / scale;
    return neg ? -r : r;
}

inline qreal const_ln2()  { static const qreal c = from_decimal("0.69314718055994530941723212145817657"); return c; }
inline qreal const_pi()   { static const qreal c = from_decimal("3.14159265358979323846264338327950288"); return c; }
inline qreal const_2pi()  { static const qreal c = from_decimal("6.28318530717958647692528676655900577"); return c; }

} // namespace qdetail

inline qreal sqrt(qreal a) {
    if (a.v < 0) return qreal(std::numeric_limits<double>::quiet_NaN());
    if (a.v == 0) return qreal(0);
    qreal x(std::sqrt(static_cast<double>(a.v)));
    for (int i = 0; i < 4; ++i) x = (x + a / x) * qreal(0.5);
    return x;
}

inline qreal exp(qreal a) {
    double ad = static_cast<double>(a.v);
    if (ad > 11400.0) return qreal(std::numeric_limits<double>::infinity());
    if (ad < -11400.0) return qreal(0);
    long long k = std::llround(ad / 0.6931471805599453);
    qreal r = a - qreal(k) * qdetail::const_ln2();
    // |r| <= 0.35: Taylor to full quad precision
    qreal term(1), sum(1);
    for (int n = 1; n <= 40; ++n) {
        term = term * r / qreal(n);
        sum += term;
        if (fabs(term) < fabs(sum) * qreal(1e-38)) break;
    }
    qreal two(2), half(0.5);
    while (k > 0) { sum *= two; --k; }
    while (k < 0) { sum *= half; ++k; }
    return sum;
}

inline qreal log(qreal a) {
    if (a.v <= 0) {
        return qreal(a.v == 0 ? -std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::quiet_NaN());
    }
    qreal y(std::log(static_cast<double>(a.v)));
    for (int i = 0; i < 3; ++i) {
        qreal e = exp(-y) * a;   // a * e^{-y} = 1 at the fixed point
        y = y + (e - qreal(1)) - (e - qreal(1)) * (e - qreal(1)) * qreal(0.5);
    }
    return y;
}

inline qreal sin(qreal a) {
    // range-reduce mod 2*pi; adequate for the oscillatory weights used here
    qreal x = a;
    qreal twopi = qdetail::const_2pi();
    double n = std::floor(static_cast<double>(x.v) / static_cast<double>(twopi.v));
    x = x - qreal(n) * twopi;
    if (x > qdetail::const_pi()) x -= twopi;
    qreal x2 = x * x, term = x, sum = x;
    for (int k = 1; k <= 30; ++k) {
        term = -term * x2 / qreal((2 * k) * (2 * k + 1));
        sum += term;
        if (fabs(term) < qreal(1e-40)) break;
    }
    return sum;
}

inline qreal pow(qreal a, qreal b) {
    if (a.v == 0) return b.v == 0 ? qreal(1) : qreal(0);
    return exp(b * log(a));
}

// uniform accessors so templated code can ask for the working precision
template <class T> struct real_traits;
template <> struct real_traits<double> {
    static constexpr double epsilon = 2.220446049250313e-16;
    static double from_decimal(const std::string& s) { return std::stod(s); }
};
template <> struct real_traits<qreal> {
    static constexpr double epsilon = quad_epsilon_value;
    static qreal from_decimal(const std::string& s) {
        // split mantissa / exponent, fold digits in quad
        auto epos = s.find_first_of("eE");
        std::string m = epos == std::string::npos ? s : s.substr(0, epos);
        long expo = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
        qreal r = qdetail::from_decimal(m.c_str());
        qreal ten(10);
        while (expo > 0) { r *= ten; --expo; }
        while (expo < 0) { r /= ten; ++expo; }
        return r;
    }
};

} // namespace gibbslab
