#pragma once

// Central-difference oracle used to cross-validate jets.

#include <functional>

#include "paraplex/jet.hpp"
#include "paraplex/matrix.hpp"

namespace paraplex {

using RealFunction = std::function<double(const Point&)>;

struct FdResult {
  Vec4 grad{};
  Mat4 hess{};
};

constexpr double kFdGradStep = 1e-5;
constexpr double kFdHessStep = 1e-4;

Vec4 fd_gradient(const RealFunction& f, const Point& p, double step = kFdGradStep);
Mat4 fd_hessian(const RealFunction& f, const Point& p, double step = kFdHessStep);
FdResult fd_oracle(const RealFunction& f, const Point& p, double step);
// Gradient with kFdGradStep, Hessian with kFdHessStep.
FdResult fd_oracle(const RealFunction& f, const Point& p);

// Order-zero evaluation of a jet program as a plain function.
RealFunction value_function(const ScalarProgram& f);

}  // namespace paraplex
