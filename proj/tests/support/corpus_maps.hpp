#pragma once

#include <string>
#include <vector>

#include "locimage/classifier.hpp"
#include "support/test_support.hpp"

namespace locimage::testing {

struct NamedGerm {
  std::string name;
  MapGerm germ;
  Status expected;
};

/// The reference maps with their known classification, built in code so the
/// library tests do not depend on the corpus loader.
inline std::vector<NamedGerm> reference_germs() {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];
  auto c = ring(3);
  auto one = ring(1);
  const Polynomial h4 = x.pow(4) + y;
  return {
      {"angle", MapGerm(x, x * y), Status::NotAGerm},
      {"blowup", MapGerm(x.pow(2), x * y), Status::NotAGerm},
      {"diagonal", MapGerm(x * (x + y), x * y), Status::NotAGerm},
      {"cone", MapGerm(c[0] * c[1], c[0] * c[2]), Status::LocallyOpen},
      {"parabola_cofactor", MapGerm(x * (y + x.pow(2)), y * (y + x.pow(2))), Status::LocallyOpen},
      {"huckleberry", MapGerm(x * y, y * (y - x.pow(2))), Status::LocallyOpen},
      {"gap_curve", MapGerm(x * y, x.pow(2) * y.pow(2) + y.pow(3)), Status::NotAGerm},
      {"rouche", MapGerm(x * h4, y * h4.pow(2)), Status::Undetermined},
      {"cusp", MapGerm((x + y).pow(2), (x + y).pow(3)), Status::CurveImage},
      {"identity", MapGerm(x, y), Status::LocallyOpen},
      {"line_diagonal", MapGerm(one[0], one[0]), Status::CurveImage},
      {"cusp_1d", MapGerm(one[0].pow(2), one[0].pow(3)), Status::CurveImage},
  };
}

}  // namespace locimage::testing
