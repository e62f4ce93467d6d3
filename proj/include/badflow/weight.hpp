#pragma once

#include "badflow/rational.hpp"

namespace badflow {

/// Weight (lambda,...,lambda,mu) on d coordinates: (d-1)*lambda + mu = 1,
/// lambda >= mu > 0.
struct Weight {
  int d = 2;
  Rational lambda{1, 2};
  Rational mu{1, 2};

  Weight() = default;
  Weight(int dim, Rational l, Rational m) : d(dim), lambda(std::move(l)), mu(std::move(m)) {
    if (d < 2) throw std::invalid_argument("Weight: d must be >= 2");
    if (Rational(d - 1) * lambda + mu != 1) throw std::invalid_argument("Weight: (d-1)*lambda + mu must equal 1");
    if (!(lambda >= mu && mu > 0)) throw std::invalid_argument("Weight: need lambda >= mu > 0");
  }

  long lambda_num() const { return numerator(lambda).convert_to<long>(); }
  long lambda_den() const { return denominator(lambda).convert_to<long>(); }
  long mu_num() const { return numerator(mu).convert_to<long>(); }
  long mu_den() const { return denominator(mu).convert_to<long>(); }
};

}  // namespace badflow
