#include "solar/detmath.hpp"

#include <cmath>
#include <limits>

namespace solar::dm {
namespace {

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kInvLn2 = 1.44269504088896338700e+00;
constexpr double kSqrtHalf = 7.07106781186547572737e-01;

// Three-part split of pi/2 (fdlibm); the first part has 33 significant bits
// so k * kPio2_1 is exact for |k| < 2^20.
constexpr double kPio2_1 = 1.57079632673412561417e+00;
constexpr double kPio2_2 = 6.07710050630396597660e-11;
constexpr double kPio2_3 = 2.02226624871116645580e-21;

constexpr double kQuarterPi = 7.85398163397448278999e-01;
constexpr double kTanEighthPi = 4.14213562373095145475e-01;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }
double inf() { return std::numeric_limits<double>::infinity(); }

// |r| <= pi/4
double sin_kernel(double r) {
    const double r2 = r * r;
    double term = r;
    double sum = r;
    for (int k = 1; k <= 10; ++k) {
        term = -term * r2 / static_cast<double>((2 * k) * (2 * k + 1));
        sum += term;
    }
    return sum;
}

double cos_kernel(double r) {
    const double r2 = r * r;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 10; ++k) {
        term = -term * r2 / static_cast<double>((2 * k - 1) * (2 * k));
        sum += term;
    }
    return sum;
}

// Reduce x to r in [-pi/4, pi/4] with x = r + q * pi/2 (q mod 4 returned).
int reduce_half_pi(double x, double& r) {
    const double kd = std::floor(x * (2.0 / kPi) + 0.5);
    r = ((x - kd * kPio2_1) - kd * kPio2_2) - kd * kPio2_3;
    const long long k = static_cast<long long>(kd);
    return static_cast<int>(((k % 4) + 4) % 4);
}

// |z| <= tan(pi/8)
double atan_series(double z) {
    const double z2 = z * z;
    // Horner over 1/(2k+1) with alternating signs, 24 terms.
    double acc = 0.0;
    for (int k = 23; k >= 0; --k) {
        const double c = (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(2 * k + 1);
        acc = c + z2 * acc;
    }
    return z * acc;
}

// t in [0, 1]
double atan_unit(double t) {
    if (t > kTanEighthPi) return kQuarterPi + atan_series((t - 1.0) / (t + 1.0));
    return atan_series(t);
}

}  // namespace

double exp(double x) {
    if (x != x) return x;
    if (x > 709.782712893384) return inf();
    if (x < -745.1332191019412) return 0.0;
    const double kd = std::floor(x * kInvLn2 + 0.5);
    const double r = (x - kd * kLn2Hi) - kd * kLn2Lo;
    double p = 1.0;
    for (int n = 16; n >= 1; --n) p = 1.0 + p * r / static_cast<double>(n);
    return std::ldexp(p, static_cast<int>(kd));
}

double log(double x) {
    if (x != x || x < 0.0) return nan();
    if (x == 0.0) return -inf();
    if (x == inf()) return x;
    int e = 0;
    double m = std::frexp(x, &e);
    if (m < kSqrtHalf) {
        m *= 2.0;
        e -= 1;
    }
    const double s = (m - 1.0) / (m + 1.0);
    const double s2 = s * s;
    double acc = 0.0;
    for (int k = 13; k >= 0; --k) acc = 1.0 / static_cast<double>(2 * k + 1) + s2 * acc;
    const double ed = static_cast<double>(e);
    return ed * kLn2Hi + (ed * kLn2Lo + 2.0 * s * acc);
}

double pow(double x, double y) {
    if (y == 0.0) return 1.0;
    if (x != x || y != y) return nan();
    if (x == 1.0) return 1.0;
    if (x == 0.0) return y > 0.0 ? 0.0 : inf();
    if (x < 0.0) {
        if (std::floor(y) != y) return nan();
        const double mag = exp(y * log(-x));
        return std::fmod(y, 2.0) == 0.0 ? mag : -mag;
    }
    return exp(y * log(x));
}

double sin(double x) {
    if (x != x || x == inf() || x == -inf()) return nan();
    double r = 0.0;
    switch (reduce_half_pi(x, r)) {
        case 0: return sin_kernel(r);
        case 1: return cos_kernel(r);
        case 2: return -sin_kernel(r);
        default: return -cos_kernel(r);
    }
}

double cos(double x) {
    if (x != x || x == inf() || x == -inf()) return nan();
    double r = 0.0;
    switch (reduce_half_pi(x, r)) {
        case 0: return cos_kernel(r);
        case 1: return -sin_kernel(r);
        case 2: return -cos_kernel(r);
        default: return sin_kernel(r);
    }
}

double atan(double x) {
    if (x != x) return x;
    const double a = std::fabs(x);
    double res = 0.0;
    if (a > 1.0) {
        res = kHalfPi - atan_unit(1.0 / a);
    } else {
        res = atan_unit(a);
    }
    return x < 0.0 ? -res : res;
}

double atan2(double y, double x) {
    if (x != x || y != y) return nan();
    if (x == 0.0 && y == 0.0) return (std::signbit(x) ? (std::signbit(y) ? -kPi : kPi) : (std::signbit(y) ? -0.0 : 0.0));
    const double ax = std::fabs(x);
    const double ay = std::fabs(y);
    double base = 0.0;
    if (ay <= ax) {
        base = atan_unit(ay / ax);
    } else {
        base = kHalfPi - atan_unit(ax / ay);
    }
    if (x < 0.0) base = kPi - base;
    return y < 0.0 ? -base : base;
}

double asin(double x) {
    if (x != x || x > 1.0 || x < -1.0) return nan();
    return atan2(x, std::sqrt((1.0 - x) * (1.0 + x)));
}

double acos(double x) {
    if (x != x || x > 1.0 || x < -1.0) return nan();
    return atan2(std::sqrt((1.0 - x) * (1.0 + x)), x);
}

double erf(double x) {
    if (x != x) return x;
    const double a = std::fabs(x);
    double res = 0.0;
    if (a < 2.0) {
        // Maclaurin series; terms peak near 7 at a = 2, so cancellation costs
        // about one decimal digit.
        const double a2 = a * a;
        double term = a;
        double sum = a;
        for (int n = 1; n < 80; ++n) {
            term = -term * a2 / static_cast<double>(n);
            const double contrib = term / static_cast<double>(2 * n + 1);
            sum += contrib;
            if (std::fabs(contrib) < 1e-18 * std::fabs(sum)) break;
        }
        res = sum * (2.0 / std::sqrt(kPi));
    } else if (a < 6.0) {
        // erfc continued fraction, evaluated bottom-up.
        double f = a;
        for (int n = 60; n >= 1; --n) f = a + (0.5 * static_cast<double>(n)) / f;
        const double erfc = exp(-a * a) / (std::sqrt(kPi) * f);
        res = 1.0 - erfc;
    } else {
        res = 1.0;
    }
    return x < 0.0 ? -res : res;
}

}  // namespace solar::dm
