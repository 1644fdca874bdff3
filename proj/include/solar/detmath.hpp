#pragma once

// Elementary functions built only from +, -, *, / and sqrt so that every
// result is bit-identical on any IEEE-754 platform. The system libm is free
// to differ in the last ulp between vendors; these are not.

namespace solar::dm {

inline constexpr double kPi = 3.14159265358979311600e+00;
inline constexpr double kHalfPi = 1.57079632679489655800e+00;
inline constexpr double kDegToRad = kPi / 180.0;

double exp(double x);
double log(double x);
double pow(double x, double y);
double sin(double x);
double cos(double x);
double atan(double x);
double atan2(double y, double x);
double asin(double x);
double acos(double x);
double erf(double x);

inline double sind(double deg) { return sin(deg * kDegToRad); }
inline double cosd(double deg) { return cos(deg * kDegToRad); }

}  // namespace solar::dm
