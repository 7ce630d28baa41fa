#include "locimage/map_germ.hpp"

#include <array>

#include "locimage/error.hpp"

namespace locimage {

MapGerm::MapGerm(Polynomial f, Polynomial g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.nvars() != g_.nvars())
    throw Error(ErrorCode::DimensionMismatch, "map components live in different rings");
  if (!f_.vanishes_at_origin() || !g_.vanishes_at_origin())
    throw Error(ErrorCode::NotThroughOrigin, "map germ does not send the origin to the origin");
  if (f_.is_zero() && g_.is_zero())
    throw Error(ErrorCode::ConstantMap, "constant map germ");
}

Polynomial compose_target(const Polynomial& phi, const MapGerm& germ) {
  if (phi.nvars() != 2)
    throw Error(ErrorCode::DimensionMismatch, "target polynomial must have exactly two variables");
  const std::array<Polynomial, 2> images{germ.f(), germ.g()};
  return substitute(phi, images);
}

}  // namespace locimage
