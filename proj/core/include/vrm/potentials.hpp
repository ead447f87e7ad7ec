#pragma once

// Barrier profiles V(x) and the outer-region scattering setup.
//
// All quantities are in atomic units (m = hbar = 1): energies in hartree,
// lengths in bohr, so that k = sqrt(2 (E - V)).

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace vrm {

/// V0 (B - (x - origin)). With the default origin this is V0 (B - x); the
/// barrier has height V0 B at x = origin and reaches zero at origin + B.
struct LinearStep {
  double V0 = 0.5;
  double B = 3.0;
  double origin = 0.0;
};

/// V0 exp(-(x - a)).
struct ExponentialStep {
  double V0 = 0.5;
  double a = 1.0;
};

/// V0 (B^2 - (x - x0)^2).
struct Parabolic {
  double V0 = 0.5;
  double B = 1.0;
  double x0 = 2.0;
};

/// V0 / cosh^2(x - x0).
struct BellShaped {
  double V0 = 2.0;
  double x0 = 5.0;
};

/// (1/2) [A y + B y (1 - y)] with y = e^{x-x0} / (1 + e^{x-x0}).
struct Eckart {
  double A = 1.0;
  double B = 8.0;
  double x0 = 8.0;
};

/// Piecewise-linear interpolation through (x, V) knots.
class Sampled {
 public:
  using Knot = std::pair<double, double>;

  /// Throws DomainError unless there are at least two knots with strictly
  /// increasing, finite abscissae and finite values.
  explicit Sampled(std::vector<Knot> knots);

  const std::vector<Knot>& knots() const noexcept { return knots_; }
  double x_min() const noexcept { return knots_.front().first; }
  double x_max() const noexcept { return knots_.back().first; }

 private:
  std::vector<Knot> knots_;
};

using PotentialProfile =
    std::variant<LinearStep, ExponentialStep, Parabolic, BellShaped, Eckart, Sampled>;

enum class ProfileKind { LinearStep, ExponentialStep, Parabolic, BellShaped, Eckart, Sampled };

ProfileKind kind(const PotentialProfile& profile) noexcept;

/// Stable identifier used in configuration files and reports
/// ("linear-step", "exponential-step", "parabolic", "bell", "eckart", "sampled").
std::string_view family_name(ProfileKind kind) noexcept;
std::string_view family_name(const PotentialProfile& profile) noexcept;

/// Value of the defining formula at x. The truncation window is the caller's
/// business: outside [a, b] the scattering problem uses V1 / V3 instead.
/// Throws DomainError for non-finite x or a Sampled lookup outside its knots.
double evaluate(const PotentialProfile& profile, double x);

/// Points where V is continuous but not smooth (Sampled knots); quadrature and
/// integrators break panels there. Empty for the analytic families.
std::vector<double> breakpoints(const PotentialProfile& profile);

struct Window {
  double a = 0.0;
  double b = 0.0;
};

struct Peak {
  double x = 0.0;
  double value = 0.0;
};

/// Global maximum of V over [window.a, window.b]. Closed form for the linear
/// and exponential steps (monotone), the parabola and the bell; golden-section
/// search (1e-10 bohr) for Eckart; exact knot scan for Sampled.
Peak peak(const PotentialProfile& profile, Window window);

/// Whether the closed-form transmission formula for this profile is valid:
/// 8 V0 > 1 for the bell, B > 1/4 for Eckart. False for the other families.
bool closed_form_applicable(const PotentialProfile& profile) noexcept;

struct ScatteringSetup {
  double a = 0.0;   ///< left boundary of the inner region
  double b = 0.0;   ///< right boundary
  double V1 = 0.0;  ///< constant potential for x < a
  double V3 = 0.0;  ///< constant potential for x > b
  double E = 0.0;   ///< particle energy

  Window window() const noexcept { return {a, b}; }
};

struct Wavenumbers {
  double k1 = 0.0;
  double k3 = 0.0;
};

/// Throws PreconditionError unless a < b, every field is finite, and
/// E > V1, E > V3 (both outer channels open).
void validate(const ScatteringSetup& setup);

/// k1 = sqrt(2 (E - V1)), k3 = sqrt(2 (E - V3)). Validates first.
Wavenumbers wavenumbers(const ScatteringSetup& setup);

}  // namespace vrm
