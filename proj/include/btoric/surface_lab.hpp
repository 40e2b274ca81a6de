#pragma once

// Numerical checks on explicit b-symplectic surfaces and their products:
// omega = F(x) dx ^ dphi with simple poles of F on the exceptional circles.

#include "btoric/classify.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace btoric::surface {

// Local defining function y(x; z) of the exceptional circle at x = z.
struct DefiningFunction {
    enum class Kind { Linear, Cubic, Sine };
    Kind kind = Kind::Linear;

    double value(double x, double z) const { return at(x - z); }
    double derivative(double x, double z) const { return derivative_at(x - z); }
    // In the offset s = x - z.
    double at(double s) const;
    double derivative_at(double s) const;
    std::string name() const;
};

// F(x) = sum_i r_i / (x - z_i) + sum_k a_k x^k, or F(x) = scale / sin x.
struct FormCoefficient {
    enum class Family { PoleSum, InverseSine };
    Family family = Family::PoleSum;
    std::vector<std::pair<double, double>> poles;  // (z, residue)
    std::vector<double> polynomial;
    double scale = 1.0;

    double value(double x) const;
    // F(z + s) for an exceptional value z, evaluated without forming z + s
    // so the pole stays exactly at s = 0.
    double near(double z, double s) const;
    std::vector<double> zeros() const;
};

struct BSurfaceModel {
    SurfaceKind kind = SurfaceKind::S2;
    FormCoefficient form;
    DefiningFunction defining;
    // Period of the angle coordinate phi; the lattice convention uses period 1,
    // so the internal form is angle_period * F dx ^ dpsi with psi = phi / angle_period.
    double angle_period = 6.283185307179586;

    // Base interval of x; for T2 it is one period [lo, lo + 2 pi) chosen so
    // that no exceptional value sits on an endpoint.
    std::pair<double, double> base() const;
    // Exceptional values of x inside base(), ascending.
    std::vector<double> z_set() const;
    double F(double x) const { return form.value(x); }
    double F_near(double z, double s) const { return form.near(z, s); }
    double F_internal(double x) const { return angle_period * form.value(x); }
    BSurfaceModel scaled(double lambda) const;
    BSurfaceModel reversed_orientation() const;
};

// Throws DomainError when F lacks a simple pole at some declared value. A
// symplectic factor of a product may have no exceptional circle at all.
void validate_model(const BSurfaceModel& m, bool require_exceptional = true);

// omega = c dh/h ^ dtheta on S2.
BSurfaceModel sphere_log_model(double c = 1.0);
// omega = (r/h + sum a_k h^k) dh ^ dtheta on S2.
BSurfaceModel sphere_pole_model(double residue, std::vector<double> polynomial);
// omega = scale dtheta_1 / sin theta_1 ^ dtheta_2 on T2.
BSurfaceModel torus_sine_model(double scale = 1.0);

struct QuadratureConfig {
    std::vector<double> epsilon_ladder;
    double tolerance = 1e-6;
    int max_subdivisions = 15;
    bool parallel = true;

    // Default ladder 1e-2 down to 1e-8 with ratio 1/2; BTORIC_MAX_SUBDIV overrides the cap.
    static QuadratureConfig defaults();
    static std::vector<double> ladder(double start, double stop, double ratio);
    void validate() const;
};

struct VolumeResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::vector<double> truncated;  // integral outside the band, per ladder entry
    std::string note;
};

// Principal-value integral of omega, optionally restricted to x in [lo, hi].
VolumeResult liouville_volume(const BSurfaceModel& m, const QuadratureConfig& cfg,
                              std::optional<std::pair<double, double>> range = std::nullopt);
// Integral of omega over x outside {|y| <= eps}, for a single eps.
double truncated_volume(const BSurfaceModel& m, double eps, const QuadratureConfig& cfg,
                        std::optional<std::pair<double, double>> range = std::nullopt);

// A b-function or any Hamiltonian on M \ Z, with optional analytic gradient (d/dx, d/dphi).
struct Hamiltonian {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> gradient;
};

// H = c log|y(x; z)| + f(x, phi).
Hamiltonian b_function(double c, DefiningFunction y, double z, std::function<double(double, double)> smooth = {},
                       std::function<std::array<double, 2>(double, double)> smooth_gradient = {});

// (dx/dt, dphi/dt) solving iota_X omega = dH.
struct VectorField {
    std::function<std::array<double, 2>(double, double)> eval;
    std::array<double, 2> operator()(double x, double phi) const { return eval(x, phi); }
};

VectorField hamiltonian_vf(const BSurfaceModel& m, const Hamiltonian& h);
VectorField scaled(const VectorField& v, double lambda);

struct FlowPeriod {
    bool periodic = false;
    double period = 0.0;
    std::string note;
};

// First time the orbit through (x0, phi0) winds once around the angle and
// returns within tol of x0; adaptive Dormand-Prince with tolerance 1e-10.
FlowPeriod flow_period(const BSurfaceModel& m, const VectorField& v, double x0, double phi0, double tol = 1e-8,
                       double time_budget = 1e3);

struct ModularPeriod {
    double loop_integral = 0.0;   // integral of iota_L omega around the circle
    double hamiltonian = 0.0;     // -c for the b-function with period-1 orbits
    double residue = 0.0;         // lim y F / y' in the model's angle units
};

double residue_at(const BSurfaceModel& m, double z);
double loop_integral(const BSurfaceModel& m, double z);
// Both routes; throws DomainError when they disagree beyond cfg.tolerance.
ModularPeriod modular_period(const BSurfaceModel& m, double z, const QuadratureConfig& cfg);

// Product of surfaces: omega = sum_j F_j(x_j) dx_j ^ dphi_j.
struct ProductModel {
    std::vector<BSurfaceModel> factors;
};

// mu_a = sum of terms in the x coordinates.
struct MomentTerm {
    enum class Kind { LogAbs, Linear, LogCotHalf };
    Kind kind = Kind::Linear;
    std::size_t factor = 0;
    double coefficient = 1.0;
    double shift = 0.0;  // LogAbs uses log|x - shift|
};

struct MomentComponent {
    // X_a^# = sum_j generator[j] d/dphi_j.
    std::vector<double> generator;
    std::vector<MomentTerm> terms;
};

struct MomentCheck {
    double max_residual = 0.0;
    std::size_t points = 0;
    std::size_t excluded = 0;
};

// max over a density x density grid of |d mu^X - iota_{X#} omega|, skipping
// points within collar of an exceptional circle.
MomentCheck verify_moment_map(const ProductModel& m, const std::vector<MomentComponent>& mu, std::size_t density = 100,
                              double collar = 1e-3, bool parallel = true);

SurfaceInvariants radko_invariants(const BSurfaceModel& m, const QuadratureConfig& cfg);

}  // namespace btoric::surface
