// Builds the first example polynomial, checks it against the series oracle and
// prints the resulting irrationality exponent for log 2.

#include <iostream>

#include "mlegendre/mlegendre.hpp"

int main() {
  using namespace mlegendre;
  const ParamSet params = *find_preset("log2-m1");

  const IntPoly l = legendre_poly(params, 2);
  std::cout << "coefficients of L at t = 2, lowest degree first:\n" << render(l);
  std::cout << "oracle agrees: " << (l == oracle_legendre(params, 2) ? "yes" : "no") << '\n';

  const MeasureReport rep = measure_bound(params, 256);
  std::cout << "delta           " << rep.delta.to_string(20) << '\n';
  std::cout << "sigma           " << rep.sigma.to_string(20) << '\n';
  std::cout << "tau             " << rep.tau.to_string(20) << '\n';
  std::cout << "mu(log 2) <=    " << upper_decimal(rep.approx_exponent, 15) << '\n';
}
