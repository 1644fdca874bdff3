#pragma once

#include <cstdint>
#include <vector>

namespace solar::field {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double k, Vec3 a) { return {k * a.x, k * a.y, k * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
Vec3 normalize(Vec3 a);

/// Frozen optical constants.
inline constexpr double kReflectivity = 0.95;
inline constexpr double kDni = 1.0;  // kW/m2
inline constexpr int kFullRays = 64;
inline constexpr double kRingSpacing = 1.4;  // multiples of the heliostat diagonal
inline constexpr double kDefaultLatitude = 37.5;

enum class Exec { Serial, Parallel };

struct FieldParams {
    double heliostat_w = 0.0;    // m
    double heliostat_l = 0.0;    // m
    double tower_h = 0.0;        // m, also the aim point height
    double angular_width = 0.0;  // deg, half-width either side of north
    double r_min = 0.0;          // multiples of tower_h
    double r_max = 0.0;
    double latitude = kDefaultLatitude;

    double diagonal() const;
    /// Height of the mirror pivot above ground.
    double pivot_height() const { return 0.6 * heliostat_l; }
};

struct Aperture {
    double height = 0.0;  // m
    double width = 0.0;   // m
};

/// Ground position; azimuth is the polar angle from north, positive east.
struct Position {
    double x = 0.0;
    double y = 0.0;
    double radius = 0.0;
    double azimuth = 0.0;  // rad
};

struct Ring {
    double radius = 0.0;
    double pitch = 0.0;  // rad
    double offset = 0.0;  // 0 or 0.5 pitch
    std::int64_t j_first = 0;
    std::int64_t count = 0;

    Position at(std::int64_t k) const;
};

struct FieldLayout {
    FieldParams params;
    std::vector<Ring> rings;
    std::int64_t capacity = 0;

    std::vector<Position> positions() const;
};

struct SunState {
    double elevation = 0.0;  // deg
    double azimuth = 0.0;    // deg clockwise from north
    bool above_horizon = false;
    double time = 0.0;  // minutes since simulation start
};

struct RatedPosition {
    Position pos;
    double efficiency = 0.0;
};

struct FieldSelection {
    std::vector<RatedPosition> heliostats;  // best first
    std::int64_t capacity = 0;
    std::int64_t fit_slack = 0;  // requested minus capacity
};

/// Clear-day transmittance over slant range d (m).
double attenuation(double slant_m);

FieldLayout generate_grid(const FieldParams& params);

/// Declination by Cooper's formula, hour angle from local solar time.
SunState sun_position(double latitude, int day_of_year, double minute_of_day);
Vec3 sun_vector(const SunState& sun);

/// Instantaneous cos * spillage * attenuation of one position (0 at night).
double optical_efficiency(const FieldParams& params, const Aperture& ap, const Position& pos, const SunState& sun);

/// Time-averaged efficiency of every grid position over the sun-up instants.
std::vector<RatedPosition> rate_positions(const FieldLayout& layout, const Aperture& ap, const std::vector<SunState>& instants,
                                          Exec exec = Exec::Serial);

/// Best min(n_hf, capacity) positions in (efficiency desc, radius asc, azimuth asc) order.
FieldSelection select_heliostats(std::vector<RatedPosition> rated, std::int64_t n_hf);

/// Same result as select_heliostats(rate_positions(...)) but walks rings
/// outward and stops once attenuation alone rules out the remaining rings.
FieldSelection select_best(const FieldLayout& layout, const Aperture& ap, const std::vector<SunState>& instants,
                           std::int64_t n_hf, Exec exec = Exec::Parallel);

/// Ray tracer over a fixed selection. Shading is tested against neighbours
/// within a few diagonals; ray origins lie on a rank-1 lattice on each mirror.
class FieldTracer {
public:
    FieldTracer(const FieldParams& params, const Aperture& ap, const FieldSelection& sel);

    /// kW reaching the aperture.
    double power(const SunState& sun, int rays, Exec exec = Exec::Parallel) const;
    std::size_t size() const { return centers_.size(); }
    double mirror_area() const;

private:
    double heliostat_power(std::size_t i, const Vec3& s, const std::vector<double>& la, const std::vector<double>& lb,
                           const std::vector<Vec3>& normals, const std::vector<Vec3>& us, const std::vector<Vec3>& vs) const;

    FieldParams params_;
    Aperture ap_;
    Vec3 target_;
    std::vector<Vec3> centers_;
    std::vector<Vec3> to_target_;  // unit vectors
    std::vector<double> tau_;
    std::vector<std::vector<std::uint32_t>> neighbours_;
};

/// Lattice offsets in (-1/2, 1/2) for n rays.
void ray_lattice(int n, std::vector<double>& a, std::vector<double>& b);

}  // namespace solar::field
