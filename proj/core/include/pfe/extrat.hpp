#pragma once

#include <cassert>
#include <string>

#include "pfe/rational.hpp"

namespace pfe {

/// Value of an additive valuation: an exact rational, or +infinity (the
/// valuation of zero). +infinity absorbs addition and compares greater than
/// every finite value.
class ExtRat {
public:
  ExtRat() : finite_(true), v_(0) {}
  ExtRat(Rat v) : finite_(true), v_(std::move(v)) {}
  ExtRat(long v) : finite_(true), v_(v, 1) {}
  static ExtRat infinity() {
    ExtRat e;
    e.finite_ = false;
    return e;
  }

  bool is_finite() const { return finite_; }
  const Rat& value() const {
    assert(finite_);
    return v_;
  }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return ExtRat(Rat(a.v_ + b.v_));
  }
  ExtRat& operator+=(const ExtRat& o) { return *this = *this + o; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  std::string str() const { return finite_ ? rat_str(v_) : "+inf"; }

private:
  bool finite_;
  Rat v_;
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }

}  // namespace pfe
