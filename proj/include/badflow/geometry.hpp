#pragma once

#include "badflow/rational.hpp"

#include <optional>
#include <utility>

namespace badflow {

/// Closed sup-norm ball in R^{2d-1}. Where rho^{1/2} enters the arithmetic
/// (the dual-vector search) a rational square root must be available; it is
/// derived automatically when rho is a perfect square and can be supplied
/// via from_sigma otherwise.
struct Ball {
  VecQ center;  // (x_1..x_{d-1}, y, z_1..z_{d-1})
  Rational radius;
  std::optional<Rational> sqrt_radius;

  Ball() = default;
  Ball(VecQ c, Rational rho) : center(std::move(c)), radius(std::move(rho)) {
    if (radius <= 0) throw std::invalid_argument("Ball: radius must be positive");
    if (center.size() % 2 == 0) throw std::invalid_argument("Ball: center must have odd dimension 2d-1");
    Rational root;
    if (perfect_power(radius, 2, &root)) sqrt_radius = root;
  }

  static Ball from_sigma(VecQ c, const Rational& sigma) {
    if (sigma <= 0) throw std::invalid_argument("Ball: sigma must be positive");
    Ball b(std::move(c), sigma * sigma);
    b.sqrt_radius = sigma;
    return b;
  }

  const Rational& sigma() const {
    if (!sqrt_radius) throw std::invalid_argument("Ball: rational sqrt of radius unavailable");
    return *sqrt_radius;
  }

  Eigen::Index ambient_dim() const { return center.size(); }
  int d() const { return static_cast<int>((center.size() + 1) / 2); }

  Rational x(int i) const { return center(i); }
  Rational y() const { return center(d() - 1); }
  Rational z(int i) const { return center(d() + i); }
  /// z-coordinates of the center.
  VecQ z_part() const { return center.segment(d(), d() - 1); }
};

/// Open delta-neighborhood of the affine hyperplane {normal . w = offset}
/// in R^{2d-1}. Membership is decided by comparing squared Euclidean
/// distances, so everything stays rational.
struct HyperplaneNbhd {
  VecZ normal;
  Int offset;
  Rational delta;

  HyperplaneNbhd() = default;
  HyperplaneNbhd(VecZ n, Int off, Rational width)
      : normal(std::move(n)), offset(std::move(off)), delta(std::move(width)) {
    if (normal.isZero()) throw std::invalid_argument("HyperplaneNbhd: zero normal");
    if (delta <= 0) throw std::invalid_argument("HyperplaneNbhd: width must be positive");
  }

  Rational norm1() const {
    Int s = 0;
    for (Eigen::Index i = 0; i < normal.size(); ++i) s += abs(normal(i));
    return Rational(s);
  }
  Rational norm2_sq() const {
    Int s = 0;
    for (Eigen::Index i = 0; i < normal.size(); ++i) s += normal(i) * normal(i);
    return Rational(s);
  }
};

inline Rational dot_zq(const VecZ& a, const VecQ& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_zq: dimension mismatch");
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += Rational(a(i)) * b(i);
  return s;
}

/// p inside the open neighborhood: dist(p, L) < delta, via squared comparison.
inline bool nbhd_contains(const HyperplaneNbhd& L, const VecQ& p) {
  Rational f = dot_zq(L.normal, p) - Rational(L.offset);
  return f * f < L.delta * L.delta * L.norm2_sq();
}

inline bool ball_contains(const Ball& B, const VecQ& p) {
  if (p.size() != B.center.size()) throw std::invalid_argument("ball_contains: dimension mismatch");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (abs_q(p(i) - B.center(i)) > B.radius) return false;
  }
  return true;
}

/// B1 inside B2 (sup-norm): center distance + rho1 <= rho2 per coordinate.
inline bool ball_subset(const Ball& B1, const Ball& B2) {
  if (B1.center.size() != B2.center.size()) throw std::invalid_argument("ball_subset: dimension mismatch");
  for (Eigen::Index i = 0; i < B1.center.size(); ++i) {
    if (abs_q(B1.center(i) - B2.center(i)) + B1.radius > B2.radius) return false;
  }
  return true;
}

/// B disjoint from the open slab L^(delta): the minimum of |normal.p - offset|
/// over the ball is |normal.c - offset| - rho*|normal|_1; compare it against
/// delta*|normal|_2 by squaring.
inline bool ball_avoids_nbhd(const Ball& B, const HyperplaneNbhd& L) {
  Rational margin = abs_q(dot_zq(L.normal, B.center) - Rational(L.offset)) - B.radius * L.norm1();
  if (margin < 0) return false;
  return margin * margin >= L.delta * L.delta * L.norm2_sq();
}

}  // namespace badflow
