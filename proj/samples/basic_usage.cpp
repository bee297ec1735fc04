#include <iostream>

#include "widthlab/widthlab.hpp"

int main() {
  using namespace widthlab;

  const BallIntersection set(16, {Ball{Exponent::from_value(2.0), 1.0}, Ball{Exponent::infinity(), 0.5}});
  const WidthQuery query(set, 4, Exponent::from_value(4.0), WidthKind::gelfand);

  std::cout << "regimes: " << classify_regimes(query).joined('|') << "\n";
  for (const BoundReport& r : all_orders(query).reports) {
    std::cout << regime_name(r.regime) << ": order " << format_real(r.order_value) << ", certified upper "
              << format_real(r.certified_upper) << "\n";
  }
  const GluskinCertificate cert = gluskin_lower_bound(query);
  std::cout << "certified lower " << format_real(cert.lower_bound) << " (s = " << cert.s_star << ")\n";

  const ExactSobolevInstance sob{4, parse_exact_exponent("4"), {{2, parse_exact_exponent("2")}, {1, parse_exact_exponent("8")}}};
  const auto theta = width_exponent(sob);
  std::cout << "Sobolev case " << case_tag(theta.which) << ", theta = " << format_rational(theta.theta) << "\n";
}
