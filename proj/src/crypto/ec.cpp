#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"

namespace tmis::crypto {

bool on_curve(const EcPoint& point, const EcCurve& curve) {
  if (point.infinity) return true;
  if (point.x < 0 || point.x >= curve.p || point.y < 0 || point.y >= curve.p) return false;
  BigInt lhs = (point.y * point.y) % curve.p;
  BigInt rhs = mod(point.x * point.x * point.x + curve.a * point.x + curve.b, curve.p);
  return lhs == rhs;
}

EcPoint ec_neg(const EcPoint& point, const EcCurve& curve) {
  if (point.infinity) return point;
  return EcPoint{point.x, mod(-point.y, curve.p), false};
}

EcPoint ec_add(const EcPoint& lhs, const EcPoint& rhs, const EcCurve& curve) {
  if (!on_curve(lhs, curve) || !on_curve(rhs, curve)) {
    throw Error(ErrorCode::PointNotOnCurve, "ec_add operand is not on the curve");
  }
  if (lhs.infinity) return rhs;
  if (rhs.infinity) return lhs;
  const BigInt& p = curve.p;
  BigInt slope;
  if (lhs.x == rhs.x) {
    if (mod(lhs.y + rhs.y, p) == 0) return EcPoint::identity();
    slope = mod((3 * lhs.x * lhs.x + curve.a) * mod_inv(2 * lhs.y, p), p);
  } else {
    slope = mod((rhs.y - lhs.y) * mod_inv(mod(rhs.x - lhs.x, p), p), p);
  }
  BigInt x3 = mod(slope * slope - lhs.x - rhs.x, p);
  BigInt y3 = mod(slope * (lhs.x - x3) - lhs.y, p);
  return EcPoint{x3, y3, false};
}

EcPoint ec_mul(const BigInt& k, const EcPoint& point, const EcCurve& curve) {
  if (k < 0) throw Error(ErrorCode::OutOfRange, "ec_mul needs a non-negative scalar");
  if (!on_curve(point, curve)) throw Error(ErrorCode::PointNotOnCurve, "ec_mul operand is not on the curve");
  EcPoint result = EcPoint::identity();
  EcPoint addend = point;
  unsigned width = bit_length(k);
  for (unsigned i = 0; i < width; ++i) {
    if (boost::multiprecision::bit_test(k, i)) result = ec_add(result, addend, curve);
    addend = ec_add(addend, addend, curve);
  }
  return result;
}

bool is_valid(const EcParams& params) {
  const auto& c = params.curve;
  if (c.p < 3) return false;
  if (mod(4 * c.a * c.a * c.a + 27 * c.b * c.b, c.p) == 0) return false;
  if (params.base.infinity || !on_curve(params.base, c)) return false;
  if (!ec_mul(params.order, params.base, c).infinity) return false;
  return on_curve(params.public_point, c) && !params.public_point.infinity;
}

EcParams make_ec_params(const EcCurve& curve, const EcPoint& base, const BigInt& order,
                        const BigInt& server_scalar) {
  if (server_scalar <= 0 || server_scalar >= order) {
    throw Error(ErrorCode::InvalidParameters, "server scalar must lie in [1, order)");
  }
  if (!on_curve(base, curve)) throw Error(ErrorCode::PointNotOnCurve, "base point is not on the curve");
  EcParams params{curve, base, order, ec_mul(server_scalar, base, curve)};
  if (!is_valid(params)) throw Error(ErrorCode::InvalidParameters, "curve parameters are inconsistent");
  return params;
}

EcCurve toy_curve() { return EcCurve{2, 2, 17}; }
EcPoint toy_base_point() { return EcPoint{5, 1, false}; }

}  // namespace tmis::crypto
