// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/frequency.hpp"

namespace ftddvs {

namespace {
constexpr double kPi = std::numbers::pi;

double sin_sin(double x1, double x2) {
  return std::sin(kPi * x1) * std::sin(kPi * x2);
}

double gauss_bump(double x1, double x2) {
  const double s = x1 + x2;
  return std::exp(5.0 * s * s);
}

double sgn(double w) { return w > 0.0 ? 1.0 : (w < 0.0 ? -1.0 : 0.0); }

// Transform pairs of the shipped time profiles (two-sided):
//   t/(1+t^2)            -> -i pi sgn(w) exp(-|w|)
//   (1-t^2)/(1+t^2)^2    ->  pi |w| exp(-|w|)   (derivative of the above)
//   exp(-t^2)            ->  sqrt(pi) exp(-w^2/4)
Complex transform_odd_rational(double w) {
  return Complex(0.0, -kPi * sgn(w) * std::exp(-std::abs(w)));
}
Complex transform_rational_derivative(double w) {
  return Complex(kPi * std::abs(w) * std::exp(-std::abs(w)), 0.0);
}
Complex transform_gaussian(double w) {
  return Complex(std::sqrt(kPi) * std::exp(-0.25 * w * w), 0.0);
}
}  // namespace

double analytical_heat(double x1, double x2, double t) {
  return (1.0 / kPi) * t / (t * t + 1.0) * sin_sin(x1, x2);
}

double ProblemDefinition::source_value(int q, double x1, double x2, double t,
                                       const Vec& xi) const {
  const auto& s = sources.at(q);
  return s.time_profile(t) * s.sigma(xi) * s.space_profile(x1, x2);
}

Complex ProblemDefinition::source_transform(int q, double omega) const {
  const auto& s = sources.at(q);
  if (s.time_transform) return s.time_transform(omega);
  return forward_time_transform(s.time_profile, omega, final_time);
}

ProblemDefinition make_problem(const std::string& id) {
  ProblemDefinition p;
  p.id = id;
  p.final_time = 1.0;

  if (id == "heat") {
    // c = xi_1 on D1, 2 xi_2 on D2; analytical solution (1/pi) t/(t^2+1) sin sin.
    p.box = {{1.0, 1.0}, {2.0, 2.0}};
    p.op_terms = {
        {"diff_d1", 0, OpTermDef::Kind::Diffusion,
         [](const ParameterPoint& mu) { return mu.xi[0]; }},
        {"diff_d2", 1, OpTermDef::Kind::Diffusion,
         [](const ParameterPoint& mu) { return 2.0 * mu.xi[1]; }},
    };
    p.sources = {
        {"dt_part", Support::Both,
         [](double t) {
           const double d = t * t + 1.0;
           return (1.0 / kPi) * (1.0 - t * t) / (d * d);
         },
         [](double w) { return transform_rational_derivative(w) / kPi; },
         [](const Vec&) { return 1.0; }, sin_sin},
        {"diff_part_d1", Support::D1,
         [](double t) { return 2.0 * kPi * t / (t * t + 1.0); },
         [](double w) { return 2.0 * kPi * transform_odd_rational(w); },
         [](const Vec& xi) { return xi[0]; }, sin_sin},
        {"diff_part_d2", Support::D2,
         [](double t) { return 2.0 * kPi * t / (t * t + 1.0); },
         [](double w) { return 2.0 * kPi * transform_odd_rational(w); },
         [](const Vec& xi) { return 2.0 * xi[1]; }, sin_sin},
    };
    p.analytical = analytical_heat;
  } else if (id == "rd1") {
    // c1 = 100 xi_1 | 10 xi_2, c2 = xi_3 | 0.1 xi_4, f = exp(-t^2) exp(5(x1+x2)^2).
    p.box = {{1.0, 1.0, 1.0, 1.0}, {2.0, 2.0, 2.0, 2.0}};
    p.op_terms = {
        {"diff_d1", 0, OpTermDef::Kind::Diffusion,
         [](const ParameterPoint& mu) { return 100.0 * mu.xi[0]; }},
        {"diff_d2", 1, OpTermDef::Kind::Diffusion,
         [](const ParameterPoint& mu) { return 10.0 * mu.xi[1]; }},
        {"react_d1", 0, OpTermDef::Kind::Reaction,
         [](const ParameterPoint& mu) { return mu.xi[2]; }},
        {"react_d2", 1, OpTermDef::Kind::Reaction,
         [](const ParameterPoint& mu) { return 0.1 * mu.xi[3]; }},
    };
    p.sources = {
        {"src", Support::Both, [](double t) { return std::exp(-t * t); },
         transform_gaussian, [](const Vec&) { return 1.0; }, gauss_bump},
    };
  } else if (id == "rd2") {
    // c1 = 0 | 10 xi_1, c2 = 100 xi_2 | 0: D1 carries only the reaction block.
    p.box = {{3.0, 3.0}, {4.0, 4.0}};
    p.op_terms = {
        {"react_d1", 0, OpTermDef::Kind::Reaction,
         [](const ParameterPoint& mu) { return 100.0 * mu.xi[1]; }},
        {"diff_d2", 1, OpTermDef::Kind::Diffusion,
         [](const ParameterPoint& mu) { return 10.0 * mu.xi[0]; }},
    };
    p.sources = {
        {"src", Support::Both,
         [](double t) {
           const double d = 1.0 + t * t;
           return (1.0 - t * t) / (d * d);
         },
         transform_rational_derivative, [](const Vec&) { return 1.0; },
         gauss_bump},
    };
  } else {
    throw std::invalid_argument("make_problem: unknown problem id '" + id + "'");
  }
  return p;
}

}  // namespace ftddvs
