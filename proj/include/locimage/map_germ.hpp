#pragma once

#include <cstddef>

#include "locimage/polynomial.hpp"

namespace locimage {

/// Polynomial representative of a map germ (C^n,0) -> (C^2,0).
/// Construction rejects components with nonzero constant term and the
/// constant (identically zero) map.
class MapGerm {
public:
  MapGerm(Polynomial f, Polynomial g);

  std::size_t n() const { return f_.nvars(); }
  const Polynomial& f() const { return f_; }
  const Polynomial& g() const { return g_; }

  friend bool operator==(const MapGerm&, const MapGerm&) = default;

private:
  Polynomial f_;
  Polynomial g_;
};

/// phi(f, g) for phi in the target ring C[u, v].
Polynomial compose_target(const Polynomial& phi, const MapGerm& germ);

}  // namespace locimage
