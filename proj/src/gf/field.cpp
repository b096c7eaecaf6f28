#include "perverx/gf.hpp"

#include <array>
#include <stdexcept>

namespace perverx::gf {

namespace {

// x^2 = c1*x + c0 in the fixed quadratic extensions
struct Modulus {
  int c1, c0;
};

Modulus modulus_for(int p) {
  if (p == 2) return {1, 1};  // x^2 + x + 1
  return {0, 2};              // x^2 + 1
}

bool has_root(int p, Modulus m) {
  for (int t = 0; t < p; ++t)
    if (((t * t - m.c1 * t - m.c0) % p + 2 * p) % p == 0) return true;
  return false;
}

}  // namespace

Field::Field(int q) : q_(q) {
  switch (q) {
    case 2: p_ = 2; d_ = 1; break;
    case 3: p_ = 3; d_ = 1; break;
    case 4: p_ = 2; d_ = 2; break;
    case 9: p_ = 3; d_ = 2; break;
    default: throw std::invalid_argument("unsupported field size " + std::to_string(q));
  }
  Modulus mod = modulus_for(p_);
  if (d_ == 2 && has_root(p_, mod)) throw std::logic_error("reducible modulus");
  for (int a = 0; a < q; ++a) {
    int a0 = a % p_, a1 = a / p_;
    for (int b = 0; b < q; ++b) {
      int b0 = b % p_, b1 = b / p_;
      int s0 = (a0 + b0) % p_, s1 = (a1 + b1) % p_;
      add_[a][b] = static_cast<Elem>(s0 + p_ * s1);
      int t0 = a0 * b0, t1 = a0 * b1 + a1 * b0, t2 = a1 * b1;
      t1 += t2 * mod.c1;
      t0 += t2 * mod.c0;
      mul_[a][b] = static_cast<Elem>(t0 % p_ + p_ * (t1 % p_));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (add_[a][b] == 0) neg_[a] = static_cast<Elem>(b);
      if (mul_[a][b] == 1) inv_[a] = static_cast<Elem>(b);
    }
  }
  for (int a = 0; a < q; ++a) {
    int a0 = a % p_, a1 = a / p_;
    std::string s;
    if (a1 == 0) {
      s = std::to_string(a0);
    } else {
      s = (a1 == 1 ? "" : std::to_string(a1)) + "x";
      if (a0) s += "+" + std::to_string(a0);
    }
    names_.push_back(s);
  }
}

const Field& Field::get(int q) {
  static const std::array<Field, 4> fields{Field(2), Field(3), Field(4), Field(9)};
  switch (q) {
    case 2: return fields[0];
    case 3: return fields[1];
    case 4: return fields[2];
    case 9: return fields[3];
    default: throw std::invalid_argument("unsupported field size " + std::to_string(q));
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

Elem Field::from_int(long v) const {
  long r = ((v % p_) + p_) % p_;
  return static_cast<Elem>(r);
}

Elem Field::parse(const std::string& s) const {
  for (int a = 0; a < q_; ++a)
    if (names_[a] == s) return static_cast<Elem>(a);
  throw std::invalid_argument("bad element '" + s + "' for GF(" + std::to_string(q_) + ")");
}

Elem field_add(const Field& f, Elem a, Elem b) { return f.add(a, b); }
Elem field_mul(const Field& f, Elem a, Elem b) { return f.mul(a, b); }
Elem field_inv(const Field& f, Elem a) { return f.inv(a); }

}  // namespace perverx::gf
