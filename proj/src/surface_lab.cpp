#include "btoric/surface_lab.hpp"

#include "btoric/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

namespace btoric::surface {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Value at 0 of the cubic through (h_k, g_k), h_k = h / 2^k.
double neville_at_zero(const std::array<double, 4>& h, std::array<double, 4> g) {
    for (std::size_t level = 1; level < 4; ++level)
        for (std::size_t i = 0; i + level < 4; ++i)
            g[i] = (h[i + level] * g[i] - h[i] * g[i + 1]) / (h[i + level] - h[i]);
    return g[0];
}

std::array<double, 4> extrapolation_steps(double h) { return {h, h / 2, h / 4, h / 8}; }

// [a, b] in the offset from anchor when set, else in x.
struct Piece {
    double a;
    double b;
    std::optional<double> anchor;
};

// Pieces of [a, b] refined geometrically toward singular ends. Endpoints
// next to a singular value are given as offsets from it.
struct Free {
    double a, b;                   // absolute, for the middle
    std::optional<double> zl, zr;  // singular values at each end
    double sa = 0, sb = 0;         // offsets: a = zl + sa, b = zr - sb
};

void split_interval(const Free& f, std::vector<Piece>& out) {
    if (!f.zl && !f.zr) {
        if (f.b > f.a) out.push_back({f.a, f.b, std::nullopt});
        return;
    }
    // Split point, as an offset from each singular end.
    double left_len = 0, right_len = 0;
    if (f.zl && f.zr) {
        double gap = (*f.zr - *f.zl);
        left_len = right_len = 0.5 * gap;
    } else if (f.zl) {
        left_len = f.b - *f.zl;
    } else {
        right_len = *f.zr - f.a;
    }
    if (f.zl) {
        for (double s = f.sa;;) {
            double next = 2.0 * s;
            if (next >= left_len) {
                out.push_back({s, left_len, f.zl});
                break;
            }
            out.push_back({s, next, f.zl});
            s = next;
        }
    }
    if (f.zr) {
        std::vector<Piece> rev;
        for (double s = f.sb;;) {
            double next = 2.0 * s;
            if (next >= right_len) {
                rev.push_back({-right_len, -s, f.zr});
                break;
            }
            rev.push_back({-next, -s, f.zr});
            s = next;
        }
        out.insert(out.end(), rev.rbegin(), rev.rend());
    }
}

// Offset t in (0, reach] with |y(z + dir * t)| = eps.
double band_edge(const BSurfaceModel& m, double z, double eps, double dir, double reach) {
    auto g = [&](double t) { return std::abs(m.defining.at(dir * t)) - eps; };
    if (!(g(reach) > 0))
        throw DomainError("liouville_volume: epsilon " + std::to_string(eps) + " exceeds the chart of the circle at " +
                          std::to_string(z));
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, 0.0, reach, -eps, g(reach), tol, iters);
    return 0.5 * (r.first + r.second);
}

int env_max_subdiv(int fallback) {
    if (const char* s = std::getenv("BTORIC_MAX_SUBDIV")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v > 0 && v < 64) return static_cast<int>(v);
    }
    return fallback;
}

}  // namespace

double DefiningFunction::at(double s) const {
    switch (kind) {
        case Kind::Linear: return s;
        case Kind::Cubic: return 0.5 * s * (1.0 + s * s);
        case Kind::Sine: return std::sin(s);
    }
    return s;
}

double DefiningFunction::derivative_at(double s) const {
    switch (kind) {
        case Kind::Linear: return 1.0;
        case Kind::Cubic: return 0.5 * (1.0 + 3.0 * s * s);
        case Kind::Sine: return std::cos(s);
    }
    return 1.0;
}

std::string DefiningFunction::name() const {
    switch (kind) {
        case Kind::Linear: return "linear";
        case Kind::Cubic: return "cubic";
        case Kind::Sine: return "sine";
    }
    return "linear";
}

double FormCoefficient::value(double x) const {
    if (family == Family::InverseSine) return scale / std::sin(x);
    double v = 0.0;
    for (const auto& [z, r] : poles) v += r / (x - z);
    double p = 0.0;
    for (std::size_t k = polynomial.size(); k-- > 0;) p = p * x + polynomial[k];
    return v + p;
}

double FormCoefficient::near(double z, double s) const {
    if (family == Family::InverseSine) {
        const long k = std::lround(z / std::numbers::pi);
        return (k % 2 == 0 ? scale : -scale) / std::sin(s);
    }
    double v = 0.0;
    for (const auto& [zz, r] : poles) v += zz == z ? r / s : r / ((z - zz) + s);
    const double x = z + s;
    double p = 0.0;
    for (std::size_t k = polynomial.size(); k-- > 0;) p = p * x + polynomial[k];
    return v + p;
}

std::vector<double> FormCoefficient::zeros() const {
    if (family == Family::InverseSine) return {0.0, std::numbers::pi};
    std::vector<double> z;
    for (const auto& p : poles) z.push_back(p.first);
    std::sort(z.begin(), z.end());
    return z;
}

std::pair<double, double> BSurfaceModel::base() const {
    if (kind == SurfaceKind::S2) return {-1.0, 1.0};
    std::vector<double> z;
    for (double v : form.zeros()) z.push_back(v - kTwoPi * std::floor(v / kTwoPi));
    std::sort(z.begin(), z.end());
    if (z.empty()) return {0.0, kTwoPi};
    double best_gap = -1, lo = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double next = i + 1 < z.size() ? z[i + 1] : z[0] + kTwoPi;
        if (next - z[i] > best_gap) {
            best_gap = next - z[i];
            lo = z[i] + 0.5 * (next - z[i]);
        }
    }
    return {lo, lo + kTwoPi};
}

std::vector<double> BSurfaceModel::z_set() const {
    auto [lo, hi] = base();
    std::vector<double> out;
    for (double v : form.zeros()) {
        if (kind == SurfaceKind::T2) v = lo + (v - lo) - kTwoPi * std::floor((v - lo) / kTwoPi);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    (void)hi;
    return out;
}

BSurfaceModel BSurfaceModel::scaled(double lambda) const {
    BSurfaceModel m = *this;
    for (auto& p : m.form.poles) p.second *= lambda;
    for (auto& a : m.form.polynomial) a *= lambda;
    m.form.scale *= lambda;
    return m;
}

BSurfaceModel BSurfaceModel::reversed_orientation() const { return scaled(-1.0); }

void validate_model(const BSurfaceModel& m, bool require_exceptional) {
    if (!(m.angle_period > 0) || !std::isfinite(m.angle_period)) throw DomainError("model: angle period must be positive");
    if (m.kind == SurfaceKind::S2 && m.form.family != FormCoefficient::Family::PoleSum)
        throw DomainError("model: S2 models use the pole_sum family");
    if (m.kind == SurfaceKind::T2 && m.form.family != FormCoefficient::Family::InverseSine)
        throw DomainError("model: T2 models use the inverse_sine family");
    if (m.form.family == FormCoefficient::Family::InverseSine && !(std::abs(m.form.scale) > 0))
        throw DomainError("model: inverse_sine scale must be nonzero");
    auto zs = m.z_set();
    if (zs.empty() && require_exceptional) throw DomainError("model: no exceptional circle");
    auto [lo, hi] = m.base();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        double z = zs[i];
        if (!(z > lo && z < hi)) throw DomainError("model: exceptional value " + std::to_string(z) + " outside the base");
        if (i > 0 && !(z > zs[i - 1])) throw DomainError("model: repeated exceptional value");
        double a = (1e-6) * m.F(z + 1e-6), b = (-1e-6) * m.F(z - 1e-6);
        if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a) < 1e-9 || std::abs(a - b) > 1e-3 * std::abs(a))
            throw DomainError("model: F has no simple pole at " + std::to_string(z));
    }
}

BSurfaceModel sphere_log_model(double c) { return sphere_pole_model(c, {}); }

BSurfaceModel sphere_pole_model(double residue, std::vector<double> polynomial) {
    BSurfaceModel m;
    m.kind = SurfaceKind::S2;
    m.form.family = FormCoefficient::Family::PoleSum;
    m.form.poles = {{0.0, residue}};
    m.form.polynomial = std::move(polynomial);
    return m;
}

BSurfaceModel torus_sine_model(double scale) {
    BSurfaceModel m;
    m.kind = SurfaceKind::T2;
    m.form.family = FormCoefficient::Family::InverseSine;
    m.form.scale = scale;
    return m;
}

QuadratureConfig QuadratureConfig::defaults() {
    QuadratureConfig c;
    c.epsilon_ladder = ladder(1e-2, 1e-8, 0.5);
    c.max_subdivisions = env_max_subdiv(c.max_subdivisions);
    return c;
}

std::vector<double> QuadratureConfig::ladder(double start, double stop, double ratio) {
    if (!(start > 0) || !(stop > 0) || !(ratio > 0 && ratio < 1) || stop > start)
        throw DomainError("epsilon ladder needs start >= stop > 0 and 0 < ratio < 1");
    std::vector<double> out;
    for (double e = start; e >= stop * (1 - 1e-12); e *= ratio) out.push_back(e);
    return out;
}

void QuadratureConfig::validate() const {
    if (epsilon_ladder.size() < 4) throw DomainError("epsilon ladder needs at least 4 entries");
    for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
        if (!(epsilon_ladder[i] > 0)) throw DomainError("epsilon ladder entries must be positive");
        if (i > 0 && !(epsilon_ladder[i] < epsilon_ladder[i - 1]))
            throw DomainError("epsilon ladder must be strictly decreasing");
    }
    const double q = epsilon_ladder[1] / epsilon_ladder[0];
    for (std::size_t i = 2; i < epsilon_ladder.size(); ++i)
        if (std::abs(epsilon_ladder[i] / epsilon_ladder[i - 1] - q) > 1e-9 * q)
            throw DomainError("epsilon ladder must be geometric");
    if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
    if (max_subdivisions < 1) throw DomainError("max subdivisions must be positive");
}

double truncated_volume(const BSurfaceModel& m, double eps, const QuadratureConfig& cfg,
                        std::optional<std::pair<double, double>> range) {
    auto [lo, hi] = range ? *range : m.base();
    if (!(hi > lo)) throw DomainError("liouville_volume: empty range");
    std::vector<double> zs;
    for (double z : m.z_set()) {
        if (z == lo || z == hi) throw DomainError("liouville_volume: range endpoint on an exceptional circle");
        if (z > lo && z < hi) zs.push_back(z);
    }

    std::vector<Free> free;
    Free current{lo, hi, std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < zs.size(); ++i) {
        double z = zs[i];
        double left_reach = i == 0 ? z - lo : 0.5 * (z - zs[i - 1]);
        double right_reach = i + 1 == zs.size() ? hi - z : 0.5 * (zs[i + 1] - z);
        current.zr = z;
        current.sb = band_edge(m, z, eps, -1.0, left_reach);
        free.push_back(current);
        current = Free{lo, hi, z, std::nullopt, band_edge(m, z, eps, 1.0, right_reach), 0.0};
    }
    free.push_back(current);

    std::vector<Piece> pieces;
    for (const auto& f : free) split_interval(f, pieces);

    const unsigned depth = static_cast<unsigned>(cfg.max_subdivisions);
    auto integrate = [&](std::size_t i) {
        const Piece& p = pieces[i];
        const double mean = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
        // Integrate over [-1, 1]: the adaptive error test compares unscaled quantities.
        auto fn = [&](double u) {
            double t = mean + half * u;
            return p.anchor ? m.F_near(*p.anchor, t) : m.F(t);
        };
        return half * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, -1.0, 1.0, depth, 1e-12);
    };
    std::vector<double> parts = cfg.parallel ? kernels::omp::map_indices(pieces.size(), integrate)
                                             : kernels::serial::map_indices(pieces.size(), integrate);
    return m.angle_period * kernels::ordered_sum(parts);
}

VolumeResult liouville_volume(const BSurfaceModel& m, const QuadratureConfig& cfg,
                              std::optional<std::pair<double, double>> range) {
    validate_model(m);
    cfg.validate();
    VolumeResult out;
    for (double e : cfg.epsilon_ladder) out.truncated.push_back(truncated_volume(m, e, cfg, range));
    const auto& v = out.truncated;
    const double q = cfg.epsilon_ladder[1] / cfg.epsilon_ladder[0];
    // Eliminate the eps and eps^2 terms from three consecutive values.
    auto richardson = [&](std::size_t i) {
        double a0 = (v[i + 1] - q * v[i]) / (1 - q);
        double a1 = (v[i + 2] - q * v[i + 1]) / (1 - q);
        return (a1 - q * q * a0) / (1 - q * q);
    };
    const std::size_t last = v.size() - 3;
    out.value = richardson(last);
    out.error_estimate = std::abs(out.value - richardson(last - 1));
    out.converged = std::isfinite(out.value) && out.error_estimate <= cfg.tolerance;
    out.note = out.converged ? "converged" : "error estimate above tolerance";
    return out;
}

Hamiltonian b_function(double c, DefiningFunction y, double z, std::function<double(double, double)> smooth,
                       std::function<std::array<double, 2>(double, double)> smooth_gradient) {
    Hamiltonian h;
    h.value = [=](double x, double phi) {
        double v = c * std::log(std::abs(y.value(x, z)));
        if (smooth) v += smooth(x, phi);
        return v;
    };
    if (!smooth || smooth_gradient) {
        h.gradient = [=](double x, double phi) {
            std::array<double, 2> g{c * y.derivative(x, z) / y.value(x, z), 0.0};
            if (smooth_gradient) {
                auto s = smooth_gradient(x, phi);
                g[0] += s[0];
                g[1] += s[1];
            }
            return g;
        };
    }
    return h;
}

VectorField hamiltonian_vf(const BSurfaceModel& m, const Hamiltonian& h) {
    auto zs = m.z_set();
    VectorField v;
    v.eval = [m, h, zs](double x, double phi) -> std::array<double, 2> {
        for (double z : zs)
            if (std::abs(x - z) < 1e-12) throw DomainError("hamiltonian_vf: point lies on the exceptional set");
        const double f = m.F(x);
        if (!std::isfinite(f) || f == 0.0) throw DomainError("hamiltonian_vf: form degenerates at this point");
        std::array<double, 2> g;
        if (h.gradient) {
            g = h.gradient(x, phi);
        } else {
            const double d = 1e-6;
            g[0] = (h.value(x + d, phi) - h.value(x - d, phi)) / (2 * d);
            g[1] = (h.value(x, phi + d) - h.value(x, phi - d)) / (2 * d);
        }
        // iota_X (F dx ^ dphi) = F (X^x dphi - X^phi dx) = H_x dx + H_phi dphi
        return {g[1] / f, -g[0] / f};
    };
    return v;
}

VectorField scaled(const VectorField& v, double lambda) {
    VectorField out;
    out.eval = [v, lambda](double x, double phi) -> std::array<double, 2> {
        auto r = v(x, phi);
        return {lambda * r[0], lambda * r[1]};
    };
    return out;
}

FlowPeriod flow_period(const BSurfaceModel& m, const VectorField& v, double x0, double phi0, double tol,
                       double time_budget) {
    using State = std::array<double, 2>;
    namespace odeint = boost::numeric::odeint;
    FlowPeriod out;
    State start{x0, phi0};
    auto v0 = v(x0, phi0);
    if (std::hypot(v0[0], v0[1]) < 1e-14) {
        out.note = "fixed point";
        return out;
    }
    auto system = [&](const State& s, State& ds, double) {
        auto r = v(s[0], s[1]);
        ds[0] = r[0];
        ds[1] = r[1];
    };
    auto stepper = odeint::make_dense_output(1e-10, 1e-10, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(start, 0.0, 1e-3);
    const double period = m.angle_period;
    auto winding = [&](const State& s) { return std::abs(s[1] - phi0) / period; };
    int target = 1;
    std::size_t steps = 0;
    while (stepper.current_time() < time_budget && steps < 2000000) {
        auto [t0, t1] = stepper.do_step(system);
        ++steps;
        if (winding(stepper.current_state()) < target) continue;
        double a = t0, b = t1;
        State s;
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
            double mid = 0.5 * (a + b);
            stepper.calc_state(mid, s);
            (winding(s) < target ? a : b) = mid;
        }
        stepper.calc_state(b, s);
        if (std::abs(s[0] - x0) <= tol) {
            out.periodic = true;
            out.period = b / target;
            out.note = target == 1 ? "first return" : "return after " + std::to_string(target) + " turns";
            return out;
        }
        ++target;
    }
    out.note = "no return within the time budget";
    return out;
}

double residue_at(const BSurfaceModel& m, double z) {
    const auto h = extrapolation_steps(1e-2);
    double total = 0.0;
    for (double side : {1.0, -1.0}) {
        std::array<double, 4> g;
        for (std::size_t k = 0; k < 4; ++k) {
            double s = side * h[k];
            g[k] = m.defining.at(s) * m.F_near(z, s) / m.defining.derivative_at(s);
        }
        total += neville_at_zero(h, g);
    }
    return 0.5 * total;
}

double loop_integral(const BSurfaceModel& m, double z) {
    const double r = residue_at(m, z);
    // iota_L omega restricted to the circle is r dphi.
    auto density = [r](double) { return r; };
    return std::abs(boost::math::quadrature::gauss_kronrod<double, 15>::integrate(density, 0.0, m.angle_period));
}

ModularPeriod modular_period(const BSurfaceModel& m, double z, const QuadratureConfig& cfg) {
    validate_model(m);
    bool found = false;
    for (double zz : m.z_set()) found = found || std::abs(zz - z) < 1e-12;
    if (!found) throw DomainError("modular_period: " + std::to_string(z) + " is not an exceptional value");
    ModularPeriod out;
    out.residue = residue_at(m, z);
    out.loop_integral = loop_integral(m, z);

    const VectorField field = hamiltonian_vf(m, b_function(1.0, m.defining, z));
    const auto h = extrapolation_steps(1e-2);
    double total = 0.0;
    for (double side : {1.0, -1.0}) {
        std::array<double, 4> t;
        for (std::size_t k = 0; k < 4; ++k) {
            auto fp = flow_period(m, field, z + side * h[k], 0.0);
            if (!fp.periodic) throw DomainError("modular_period: orbit near the circle is not periodic");
            t[k] = fp.period;
        }
        total += neville_at_zero(h, t);
    }
    // log|y| winds once in time T0, so c = -T0 gives period-1 orbits.
    out.hamiltonian = 0.5 * total;
    if (std::abs(out.hamiltonian - out.loop_integral) > cfg.tolerance)
        throw DomainError("modular_period: loop integral " + std::to_string(out.loop_integral) +
                          " and Hamiltonian route " + std::to_string(out.hamiltonian) + " disagree");
    return out;
}

MomentCheck verify_moment_map(const ProductModel& m, const std::vector<MomentComponent>& mu, std::size_t density,
                              double collar, bool parallel) {
    const std::size_t k = m.factors.size();
    if (k < 1 || k > 2) throw DomainError("verify_moment_map: products of one or two surfaces are supported");
    if (density < 2) throw DomainError("verify_moment_map: grid density must be at least 2");
    for (const auto& f : m.factors) validate_model(f, false);
    for (const auto& c : mu) {
        if (c.generator.size() != k) throw DomainError("verify_moment_map: generator dimension mismatch");
        for (const auto& t : c.terms)
            if (t.factor >= k) throw DomainError("verify_moment_map: term refers to a missing factor");
    }
    std::vector<std::vector<double>> zs;
    for (const auto& f : m.factors) zs.push_back(f.z_set());

    // Grid point (i, j) -> (x_1, phi_1, ..., x_k, phi_k).
    auto coords = [&](std::size_t i, std::size_t j) {
        std::vector<double> x(k), phi(k, 0.3);
        auto cell = [&](std::pair<double, double> r, std::size_t idx) {
            return r.first + (idx + 0.5) * (r.second - r.first) / density;
        };
        x[0] = cell(m.factors[0].base(), i);
        if (k == 1)
            phi[0] = cell({0.0, m.factors[0].angle_period}, j);
        else
            x[1] = cell(m.factors[1].base(), j);
        return std::pair{x, phi};
    };
    auto excluded = [&](const std::vector<double>& x) {
        for (std::size_t f = 0; f < k; ++f)
            for (double z : zs[f])
                if (std::abs(x[f] - z) < collar) return true;
        return false;
    };
    auto term_derivative = [](const MomentTerm& t, double x) {
        switch (t.kind) {
            case MomentTerm::Kind::Linear: return t.coefficient;
            case MomentTerm::Kind::LogAbs: return t.coefficient / (x - t.shift);
            case MomentTerm::Kind::LogCotHalf: return -t.coefficient / std::sin(x);
        }
        return 0.0;
    };
    auto residual = [&](std::size_t i, std::size_t j) {
        auto [x, phi] = coords(i, j);
        if (excluded(x)) return -1.0;
        double worst = 0.0;
        for (const auto& c : mu) {
            std::vector<double> dx(k, 0.0);
            for (const auto& t : c.terms) dx[t.factor] += term_derivative(t, x[t.factor]);
            for (std::size_t f = 0; f < k; ++f) {
                // iota_{X#} omega = -sum_j g_j F_j dx_j; mu has no phi dependence.
                worst = std::max(worst, std::abs(dx[f] + c.generator[f] * m.factors[f].F(x[f])));
            }
        }
        return worst;
    };
    MomentCheck out;
    out.max_residual = parallel ? kernels::omp::max_over_grid(density, density, residual)
                                : kernels::serial::max_over_grid(density, density, residual);
    if (out.max_residual < 0) out.max_residual = 0;
    for (std::size_t i = 0; i < density; ++i)
        for (std::size_t j = 0; j < density; ++j) (excluded(coords(i, j).first) ? out.excluded : out.points)++;
    return out;
}

SurfaceInvariants radko_invariants(const BSurfaceModel& m, const QuadratureConfig& cfg) {
    validate_model(m);
    SurfaceInvariants inv;
    inv.kind = m.kind;
    auto zs = m.z_set();
    inv.z_count = static_cast<int>(zs.size());
    for (double z : zs) inv.periods.push_back(modular_period(m, z, cfg).loop_integral);
    auto v = liouville_volume(m, cfg);
    if (!v.converged) throw DomainError("radko_invariants: Liouville volume did not converge");
    inv.volume = v.value;
    return inv;
}

}  // namespace btoric::surface
