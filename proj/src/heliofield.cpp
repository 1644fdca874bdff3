#include "solar/heliofield.hpp"

#include "solar/detmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

namespace solar::field {
namespace {

constexpr double kGoldenFraction = 0.6180339887498949;

bool better(const RatedPosition& a, const RatedPosition& b) {
    if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
    if (a.pos.radius != b.pos.radius) return a.pos.radius < b.pos.radius;
    return a.pos.azimuth < b.pos.azimuth;
}

struct Pt {
    double x, z;
};

// Area of the convex polygon poly clipped to |x| <= hx, |z| <= hz.
double clipped_area(std::array<Pt, 4> quad, double hx, double hz) {
    Pt buf_a[12];
    Pt buf_b[12];
    int n = 4;
    for (int i = 0; i < 4; ++i) buf_a[i] = quad[i];
    Pt* in = buf_a;
    Pt* out = buf_b;
    for (int edge = 0; edge < 4; ++edge) {
        auto value = [edge, hx, hz](const Pt& p) {
            switch (edge) {
                case 0: return hx - p.x;
                case 1: return hx + p.x;
                case 2: return hz - p.z;
                default: return hz + p.z;
            }
        };
        int m = 0;
        for (int i = 0; i < n; ++i) {
            const Pt& cur = in[i];
            const Pt& nxt = in[(i + 1) % n];
            const double vc = value(cur);
            const double vn = value(nxt);
            if (vc >= 0.0) out[m++] = cur;
            if ((vc >= 0.0) != (vn >= 0.0)) {
                const double t = vc / (vc - vn);
                out[m++] = {cur.x + t * (nxt.x - cur.x), cur.z + t * (nxt.z - cur.z)};
            }
        }
        n = m;
        std::swap(in, out);
        if (n == 0) return 0.0;
    }
    double twice = 0.0;
    for (int i = 0; i < n; ++i) {
        const Pt& p = in[i];
        const Pt& q = in[(i + 1) % n];
        twice += p.x * q.z - q.x * p.z;
    }
    return 0.5 * std::fabs(twice);
}

// Mirror frame for a heliostat aiming t at the sun s: normal and the
// horizontal width axis u, length axis v.
void mirror_frame(const Vec3& s, const Vec3& t, Vec3& n, Vec3& u, Vec3& v) {
    n = normalize(s + t);
    const Vec3 h{-n.y, n.x, 0.0};
    const double hn = std::sqrt(h.x * h.x + h.y * h.y);
    u = hn > 1e-12 ? (1.0 / hn) * h : Vec3{1.0, 0.0, 0.0};
    v = cross(n, u);
}

// Footprint edge vectors of the reflected beam on the aperture plane y = 0,
// in (x, z) components.
void footprint(const Vec3& t, const Vec3& u, const Vec3& v, double w, double l, Pt& eu, Pt& ev) {
    const double ku = u.y / t.y;
    const double kv = v.y / t.y;
    eu = {w * (u.x - ku * t.x), w * (u.z - ku * t.z)};
    ev = {l * (v.x - kv * t.x), l * (v.z - kv * t.z)};
}

double spillage_factor(const Pt& eu, const Pt& ev, const Aperture& ap) {
    const double area = std::fabs(eu.x * ev.z - eu.z * ev.x);
    if (!(area > 0.0) || !std::isfinite(area)) return 0.0;
    const double hx = 0.5 * ap.width;
    const double hz = 0.5 * ap.height;
    const std::array<Pt, 4> quad{Pt{0.5 * (-eu.x - ev.x), 0.5 * (-eu.z - ev.z)}, Pt{0.5 * (eu.x - ev.x), 0.5 * (eu.z - ev.z)},
                                 Pt{0.5 * (eu.x + ev.x), 0.5 * (eu.z + ev.z)}, Pt{0.5 * (-eu.x + ev.x), 0.5 * (-eu.z + ev.z)}};
    bool inside = true;
    for (const auto& p : quad) inside = inside && std::fabs(p.x) <= hx && std::fabs(p.z) <= hz;
    if (inside) return 1.0;
    return std::min(1.0, clipped_area(quad, hx, hz) / area);
}

Vec3 center_of(const FieldParams& fp, const Position& p) { return {p.x, p.y, fp.pivot_height()}; }

double slant_of(const FieldParams& fp, double radius) {
    const double dz = fp.tower_h - fp.pivot_height();
    return std::sqrt(radius * radius + dz * dz);
}

// Efficiency averaged over sun vectors (all above the horizon).
double average_efficiency(const FieldParams& fp, const Aperture& ap, const Position& pos, const std::vector<Vec3>& suns) {
    if (suns.empty()) return 0.0;
    const Vec3 c = center_of(fp, pos);
    const Vec3 d = Vec3{0.0, 0.0, fp.tower_h} - c;
    const double slant = std::sqrt(dot(d, d));
    const Vec3 t = (1.0 / slant) * d;
    const double tau = attenuation(slant);
    double sum = 0.0;
    for (const Vec3& s : suns) {
        Vec3 n, u, v;
        mirror_frame(s, t, n, u, v);
        const double cosine = dot(n, s);
        if (cosine <= 0.0) continue;
        Pt eu, ev;
        footprint(t, u, v, fp.heliostat_w, fp.heliostat_l, eu, ev);
        sum += cosine * spillage_factor(eu, ev, ap) * tau;
    }
    return sum / static_cast<double>(suns.size());
}

std::vector<Vec3> sun_vectors(const std::vector<SunState>& instants) {
    std::vector<Vec3> out;
    for (const auto& s : instants)
        if (s.above_horizon) out.push_back(sun_vector(s));
    return out;
}

}  // namespace

Vec3 normalize(Vec3 a) {
    const double len = std::sqrt(dot(a, a));
    return (1.0 / len) * a;
}

double FieldParams::diagonal() const { return std::sqrt(heliostat_w * heliostat_w + heliostat_l * heliostat_l); }

double attenuation(double slant_m) {
    // Quadratic clear-day fit up to 1 km, exponential continuation beyond
    // (the quadratic turns upward near 3 km).
    static const double kTail = -dm::log(0.99321 - 0.1176 + 0.0197) / 1000.0;
    const double d = std::max(0.0, slant_m);
    double tau = 0.0;
    if (d <= 1000.0) {
        tau = 0.99321 - 0.0001176 * d + 1.97e-8 * d * d;
    } else {
        tau = dm::exp(-kTail * d);
    }
    return std::clamp(tau, 0.0, 1.0);
}

Position Ring::at(std::int64_t k) const {
    const double psi = (static_cast<double>(j_first + k) + offset) * pitch;
    return {radius * dm::sin(psi), radius * dm::cos(psi), radius, psi};
}

std::vector<Position> FieldLayout::positions() const {
    std::vector<Position> out;
    out.reserve(static_cast<std::size_t>(capacity));
    for (const auto& ring : rings)
        for (std::int64_t k = 0; k < ring.count; ++k) out.push_back(ring.at(k));
    return out;
}

FieldLayout generate_grid(const FieldParams& p) {
    FieldLayout layout;
    layout.params = p;
    const double diag = p.diagonal();
    const double dr = kRingSpacing * diag;
    const double r0 = p.r_min * p.tower_h;
    const double rmax = p.r_max * p.tower_h;
    const double half_width = p.angular_width * dm::kDegToRad;
    if (!(dr > 0.0)) return layout;
    for (std::int64_t i = 0;; ++i) {
        const double r = r0 + (static_cast<double>(i) + 0.5) * dr;
        if (r > rmax) break;
        Ring ring;
        ring.radius = r;
        const double half_chord = diag / (2.0 * r);
        ring.pitch = half_chord >= 1.0 ? dm::kPi : 2.0 * dm::asin(half_chord);
        ring.offset = (i % 2 == 1) ? 0.5 : 0.0;
        const double lo = std::ceil(-half_width / ring.pitch - ring.offset);
        const double hi = std::floor(half_width / ring.pitch - ring.offset);
        if (hi < lo) continue;
        ring.j_first = static_cast<std::int64_t>(lo);
        ring.count = static_cast<std::int64_t>(hi - lo) + 1;
        layout.capacity += ring.count;
        layout.rings.push_back(ring);
    }
    return layout;
}

SunState sun_position(double latitude, int day_of_year, double minute_of_day) {
    const double decl = 23.45 * dm::sind(360.0 * (284.0 + day_of_year) / 365.0);
    const double omega = 15.0 * (minute_of_day / 60.0 - 12.0);
    const double sl = dm::sind(latitude), cl = dm::cosd(latitude);
    const double sd = dm::sind(decl), cd = dm::cosd(decl);
    const double sin_alt = std::clamp(cl * cd * dm::cosd(omega) + sl * sd, -1.0, 1.0);
    SunState sun;
    sun.elevation = dm::asin(sin_alt) / dm::kDegToRad;
    const double cos_alt = std::sqrt((1.0 - sin_alt) * (1.0 + sin_alt));
    if (cos_alt * cl > 1e-12) {
        const double ca = std::clamp((sd - sin_alt * sl) / (cos_alt * cl), -1.0, 1.0);
        const double a = dm::acos(ca) / dm::kDegToRad;
        sun.azimuth = omega <= 0.0 ? a : 360.0 - a;
    } else {
        sun.azimuth = 180.0;
    }
    sun.above_horizon = sun.elevation > 0.0;
    return sun;
}

Vec3 sun_vector(const SunState& sun) {
    const double ce = dm::cosd(sun.elevation);
    return {dm::sind(sun.azimuth) * ce, dm::cosd(sun.azimuth) * ce, dm::sind(sun.elevation)};
}

double optical_efficiency(const FieldParams& fp, const Aperture& ap, const Position& pos, const SunState& sun) {
    if (!sun.above_horizon) return 0.0;
    return average_efficiency(fp, ap, pos, {sun_vector(sun)});
}

std::vector<RatedPosition> rate_positions(const FieldLayout& layout, const Aperture& ap, const std::vector<SunState>& instants,
                                          Exec exec) {
    const std::vector<Vec3> suns = sun_vectors(instants);
    std::vector<Position> pos = layout.positions();
    std::vector<RatedPosition> out(pos.size());
    const auto n = static_cast<std::int64_t>(pos.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) out[i] = {pos[i], average_efficiency(layout.params, ap, pos[i], suns)};
    } else {
        for (std::int64_t i = 0; i < n; ++i) out[i] = {pos[i], average_efficiency(layout.params, ap, pos[i], suns)};
    }
    return out;
}

FieldSelection select_heliostats(std::vector<RatedPosition> rated, std::int64_t n_hf) {
    FieldSelection sel;
    sel.capacity = static_cast<std::int64_t>(rated.size());
    sel.fit_slack = n_hf - sel.capacity;
    const auto keep = static_cast<std::size_t>(std::clamp<std::int64_t>(n_hf, 0, sel.capacity));
    std::partial_sort(rated.begin(), rated.begin() + static_cast<std::ptrdiff_t>(keep), rated.end(), better);
    rated.resize(keep);
    sel.heliostats = std::move(rated);
    return sel;
}

FieldSelection select_best(const FieldLayout& layout, const Aperture& ap, const std::vector<SunState>& instants,
                           std::int64_t n_hf, Exec exec) {
    FieldSelection sel;
    sel.capacity = layout.capacity;
    sel.fit_slack = n_hf - layout.capacity;
    const auto keep = static_cast<std::size_t>(std::clamp<std::int64_t>(n_hf, 0, layout.capacity));
    if (keep == 0) return sel;
    const std::vector<Vec3> suns = sun_vectors(instants);
    std::vector<RatedPosition> heap;  // worst of the kept set on top
    heap.reserve(keep + 1);
    std::vector<RatedPosition> ring_buf;
    for (const Ring& ring : layout.rings) {
        if (heap.size() == keep && attenuation(slant_of(layout.params, ring.radius)) <= heap.front().efficiency) break;
        ring_buf.resize(static_cast<std::size_t>(ring.count));
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t k = 0; k < ring.count; ++k) {
                const Position p = ring.at(k);
                ring_buf[k] = {p, average_efficiency(layout.params, ap, p, suns)};
            }
        } else {
            for (std::int64_t k = 0; k < ring.count; ++k) {
                const Position p = ring.at(k);
                ring_buf[k] = {p, average_efficiency(layout.params, ap, p, suns)};
            }
        }
        for (const auto& rp : ring_buf) {
            if (heap.size() < keep) {
                heap.push_back(rp);
                std::push_heap(heap.begin(), heap.end(), better);
            } else if (better(rp, heap.front())) {
                std::pop_heap(heap.begin(), heap.end(), better);
                heap.back() = rp;
                std::push_heap(heap.begin(), heap.end(), better);
            }
        }
    }
    std::sort(heap.begin(), heap.end(), better);
    sel.heliostats = std::move(heap);
    return sel;
}

void ray_lattice(int n, std::vector<double>& a, std::vector<double>& b) {
    a.resize(static_cast<std::size_t>(n));
    b.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        a[j] = (j + 0.5) / n - 0.5;
        const double f = j * kGoldenFraction + 0.5;
        b[j] = (f - std::floor(f)) - 0.5;
    }
}

FieldTracer::FieldTracer(const FieldParams& params, const Aperture& ap, const FieldSelection& sel)
    : params_(params), ap_(ap), target_{0.0, 0.0, params.tower_h} {
    const std::size_t n = sel.heliostats.size();
    centers_.reserve(n);
    to_target_.reserve(n);
    tau_.reserve(n);
    for (const auto& rp : sel.heliostats) {
        const Vec3 c = center_of(params_, rp.pos);
        const Vec3 d = target_ - c;
        const double slant = std::sqrt(dot(d, d));
        centers_.push_back(c);
        to_target_.push_back((1.0 / slant) * d);
        tau_.push_back(attenuation(slant));
    }
    // Shading partners within a few diagonals, found through a square hash grid.
    const double reach = 4.0 * params_.diagonal();
    neighbours_.assign(n, {});
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells;
    auto key = [reach](double x, double y) {
        const auto cx = static_cast<std::int64_t>(std::floor(x / reach));
        const auto cy = static_cast<std::int64_t>(std::floor(y / reach));
        return cx * 4000037 + cy;
    };
    for (std::uint32_t i = 0; i < n; ++i) cells[key(centers_[i].x, centers_[i].y)].push_back(i);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto cx = static_cast<std::int64_t>(std::floor(centers_[i].x / reach));
        const auto cy = static_cast<std::int64_t>(std::floor(centers_[i].y / reach));
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells.find((cx + dx) * 4000037 + (cy + dy));
                if (it == cells.end()) continue;
                for (std::uint32_t k : it->second) {
                    if (k == i) continue;
                    const double ex = centers_[k].x - centers_[i].x;
                    const double ey = centers_[k].y - centers_[i].y;
                    if (ex * ex + ey * ey <= reach * reach) neighbours_[i].push_back(k);
                }
            }
        }
        std::sort(neighbours_[i].begin(), neighbours_[i].end());
    }
}

double FieldTracer::mirror_area() const {
    return static_cast<double>(centers_.size()) * params_.heliostat_w * params_.heliostat_l;
}

double FieldTracer::heliostat_power(std::size_t i, const Vec3& s, const std::vector<double>& la,
                                    const std::vector<double>& lb, const std::vector<Vec3>& normals,
                                    const std::vector<Vec3>& us, const std::vector<Vec3>& vs) const {
    const Vec3& n = normals[i];
    const double cosine = dot(n, s);
    if (cosine <= 0.0) return 0.0;
    const double w = params_.heliostat_w;
    const double l = params_.heliostat_l;
    Pt eu, ev;
    footprint(to_target_[i], us[i], vs[i], w, l, eu, ev);
    const double hx = 0.5 * ap_.width;
    const double hz = 0.5 * ap_.height;

    // Neighbours whose bounding sphere can intersect rays cast toward the sun.
    std::uint32_t shaders[64];
    int n_shaders = 0;
    const Vec3& ci = centers_[i];
    const double diag = params_.diagonal();
    for (std::uint32_t k : neighbours_[i]) {
        const Vec3 e = centers_[k] - ci;
        const double along = dot(e, s);
        if (along <= 0.0) continue;
        if (dot(e, e) - along * along > diag * diag) continue;
        if (n_shaders < 64) shaders[n_shaders++] = k;
    }

    const int rays = static_cast<int>(la.size());
    int hits = 0;
    for (int j = 0; j < rays; ++j) {
        const double a = la[j];
        const double b = lb[j];
        const double fx = a * eu.x + b * ev.x;
        const double fz = a * eu.z + b * ev.z;
        if (std::fabs(fx) > hx || std::fabs(fz) > hz) continue;
        bool shaded = false;
        if (n_shaders > 0) {
            const Vec3 p = ci + Vec3{a * w * us[i].x + b * l * vs[i].x, a * w * us[i].y + b * l * vs[i].y,
                                     a * w * us[i].z + b * l * vs[i].z};
            for (int q = 0; q < n_shaders && !shaded; ++q) {
                const std::uint32_t k = shaders[q];
                const Vec3& nk = normals[k];
                const double denom = dot(s, nk);
                if (denom <= 1e-12) continue;
                const double lambda = dot(centers_[k] - p, nk) / denom;
                if (lambda <= 0.0) continue;
                const Vec3 hit = p + lambda * s - centers_[k];
                shaded = std::fabs(dot(hit, us[k])) <= 0.5 * w && std::fabs(dot(hit, vs[k])) <= 0.5 * l;
            }
        }
        if (!shaded) ++hits;
    }
    return kDni * w * l * cosine * kReflectivity * tau_[i] * static_cast<double>(hits) / static_cast<double>(rays);
}

double FieldTracer::power(const SunState& sun, int rays, Exec exec) const {
    if (!sun.above_horizon || centers_.empty()) return 0.0;
    const Vec3 s = sun_vector(sun);
    std::vector<double> la, lb;
    ray_lattice(std::max(1, rays), la, lb);
    const auto n = static_cast<std::int64_t>(centers_.size());
    std::vector<Vec3> normals(centers_.size()), us(centers_.size()), vs(centers_.size());
    std::vector<double> per(centers_.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < n; ++i) mirror_frame(s, to_target_[i], normals[i], us[i], vs[i]);
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t i = 0; i < n; ++i)
                per[i] = heliostat_power(static_cast<std::size_t>(i), s, la, lb, normals, us, vs);
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) mirror_frame(s, to_target_[i], normals[i], us[i], vs[i]);
        for (std::int64_t i = 0; i < n; ++i)
            per[i] = heliostat_power(static_cast<std::size_t>(i), s, la, lb, normals, us, vs);
    }
    double total = 0.0;
    for (double v : per) total += v;
    return total;
}

}  // namespace solar::field
