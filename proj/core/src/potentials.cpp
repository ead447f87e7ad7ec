#include "vrm/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vrm/error.hpp"

namespace vrm {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double eckart_value(const Eckart& p, double x) {
  // y = 1/(1+e^{-t}) and y(1-y) = 1/(4 cosh^2(t/2)) stay finite for any t.
  const double t = x - p.x0;
  const double y = 1.0 / (1.0 + std::exp(-t));
  const double c = std::cosh(0.5 * t);
  const double y1my = 0.25 / (c * c);
  return 0.5 * (p.A * y + p.B * y1my);
}

double sampled_value(const Sampled& s, double x) {
  const auto& k = s.knots();
  if (x < s.x_min() || x > s.x_max()) {
    throw DomainError("sampled profile evaluated at x=" + std::to_string(x) +
                      " outside knot range [" + std::to_string(s.x_min()) + ", " +
                      std::to_string(s.x_max()) + "]");
  }
  auto it = std::upper_bound(k.begin(), k.end(), x,
                             [](double v, const Sampled::Knot& kn) { return v < kn.first; });
  if (it == k.end()) return k.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (x - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

double clamp_to(double x, Window w) { return std::clamp(x, w.a, w.b); }

Peak golden_section_max(const PotentialProfile& p, double lo, double hi, double tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = evaluate(p, x1);
  double f2 = evaluate(p, x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = evaluate(p, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = evaluate(p, x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, evaluate(p, x)};
}

}  // namespace

Sampled::Sampled(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw DomainError("sampled profile needs at least two knots");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second))
      throw DomainError("sampled profile has a non-finite knot at index " + std::to_string(i));
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first))
      throw DomainError("sampled knots must be strictly increasing in x (index " +
                        std::to_string(i) + ")");
  }
}

ProfileKind kind(const PotentialProfile& profile) noexcept {
  return static_cast<ProfileKind>(profile.index());
}

std::string_view family_name(ProfileKind k) noexcept {
  switch (k) {
    case ProfileKind::LinearStep: return "linear-step";
    case ProfileKind::ExponentialStep: return "exponential-step";
    case ProfileKind::Parabolic: return "parabolic";
    case ProfileKind::BellShaped: return "bell";
    case ProfileKind::Eckart: return "eckart";
    case ProfileKind::Sampled: return "sampled";
  }
  return "unknown";
}

std::string_view family_name(const PotentialProfile& profile) noexcept {
  return family_name(kind(profile));
}

double evaluate(const PotentialProfile& profile, double x) {
  if (!std::isfinite(x)) throw DomainError("potential evaluated at non-finite x");
  return std::visit(
      overloaded{
          [x](const LinearStep& p) { return p.V0 * (p.B - (x - p.origin)); },
          [x](const ExponentialStep& p) { return p.V0 * std::exp(-(x - p.a)); },
          [x](const Parabolic& p) {
            const double d = x - p.x0;
            return p.V0 * (p.B * p.B - d * d);
          },
          [x](const BellShaped& p) {
            const double c = std::cosh(x - p.x0);
            return p.V0 / (c * c);
          },
          [x](const Eckart& p) { return eckart_value(p, x); },
          [x](const Sampled& s) { return sampled_value(s, x); },
      },
      profile);
}

std::vector<double> breakpoints(const PotentialProfile& profile) {
  std::vector<double> out;
  if (const auto* s = std::get_if<Sampled>(&profile)) {
    for (const auto& k : s->knots()) out.push_back(k.first);
  }
  return out;
}

Peak peak(const PotentialProfile& profile, Window w) {
  if (!(w.a < w.b)) throw PreconditionError("peak: window requires a < b");
  const auto at = [&](double x) { return Peak{x, evaluate(profile, x)}; };
  return std::visit(
      overloaded{
          [&](const LinearStep& p) { return at(p.V0 >= 0 ? w.a : w.b); },
          [&](const ExponentialStep& p) { return at(p.V0 >= 0 ? w.a : w.b); },
          [&](const Parabolic& p) {
            if (p.V0 >= 0) return at(clamp_to(p.x0, w));
            const Peak l = at(w.a), r = at(w.b);
            return l.value >= r.value ? l : r;
          },
          [&](const BellShaped& p) {
            if (p.V0 >= 0) return at(clamp_to(p.x0, w));
            const Peak l = at(w.a), r = at(w.b);
            return l.value >= r.value ? l : r;
          },
          [&](const Eckart&) {
            // Unimodal for A, B >= 0; compare against the ends for safety
            // with other parameter signs.
            Peak best = golden_section_max(profile, w.a, w.b, 1e-10);
            for (double x : {w.a, w.b}) {
              const Peak e = at(x);
              if (e.value > best.value) best = e;
            }
            return best;
          },
          [&](const Sampled& s) {
            Peak best = at(std::max(w.a, s.x_min()));
            for (const auto& k : s.knots()) {
              if (k.first < w.a || k.first > w.b) continue;
              if (k.second > best.value) best = {k.first, k.second};
            }
            const Peak r = at(std::min(w.b, s.x_max()));
            return r.value > best.value ? r : best;
          },
      },
      profile);
}

bool closed_form_applicable(const PotentialProfile& profile) noexcept {
  if (const auto* b = std::get_if<BellShaped>(&profile)) return 8.0 * b->V0 > 1.0;
  if (const auto* e = std::get_if<Eckart>(&profile)) return e->B > 0.25;
  return false;
}

void validate(const ScatteringSetup& s) {
  for (double v : {s.a, s.b, s.V1, s.V3, s.E}) {
    if (!std::isfinite(v)) throw PreconditionError("scattering setup has a non-finite field");
  }
  if (!(s.a < s.b))
    throw PreconditionError("scattering setup requires a < b (a=" + std::to_string(s.a) +
                            ", b=" + std::to_string(s.b) + ")");
  if (!(s.E > s.V1))
    throw PreconditionError("closed channel: E=" + std::to_string(s.E) +
                            " must exceed V1=" + std::to_string(s.V1));
  if (!(s.E > s.V3))
    throw PreconditionError("closed channel: E=" + std::to_string(s.E) +
                            " must exceed V3=" + std::to_string(s.V3));
}

Wavenumbers wavenumbers(const ScatteringSetup& s) {
  validate(s);
  return {std::sqrt(2.0 * (s.E - s.V1)), std::sqrt(2.0 * (s.E - s.V3))};
}

}  // namespace vrm
