// Finite quotients R/L of the ring of integers by a full-rank ideal lattice,
// with machine-integer arithmetic.  Elements are coordinate vectors on the
// power basis, reduced into the fundamental box of the row-HNF basis of L,
// so each residue class has a unique representative and a dense index.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fuchsian/errors.hpp"
#include "fuchsian/linalg.hpp"
#include "fuchsian/numberfield.hpp"

namespace fuchsian {

class ResidueRing {
 public:
  using Elt = std::vector<long>;

  ResidueRing(const NumberField& K, const ZMat& lattice) : K_(&K), n_(K.degree) {
    ZMat h = hnf_rows(lattice);
    if (static_cast<int>(h.size()) != n_) {
      throw std::invalid_argument("residue ring needs a full-rank lattice");
    }
    h_.assign(n_, std::vector<long>(n_, 0));
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        if (!h[i][j].fits_slong_p()) {
          throw std::invalid_argument("residue ring lattice entries exceed machine range");
        }
        h_[i][j] = h[i][j].get_si();
      }
    }
    count_ = 1;
    for (int i = 0; i < n_; ++i) {
      if (h_[i][i] <= 0) throw std::invalid_argument("degenerate residue ring lattice");
      if (count_ > (1L << 31) / h_[i][i]) {
        throw std::invalid_argument("residue ring too large to enumerate");
      }
      count_ *= h_[i][i];
    }
    fc_.resize(n_ + 1);
    for (int i = 0; i <= n_; ++i) {
      if (!K.f[i].fits_slong_p()) {
        throw std::invalid_argument("defining polynomial exceeds machine range");
      }
      fc_[i] = K.f[i].get_si();
    }
  }

  const NumberField& field() const { return *K_; }
  int degree() const { return n_; }
  long size() const { return count_; }

  Elt zero() const { return Elt(n_, 0); }

  Elt one() const {
    Elt v(n_, 0);
    v[0] = 1;
    reduce(v);
    return v;
  }

  Elt from_element(const FieldElement& x) const {
    ZVec c = x.int_coords();
    Elt v(n_);
    for (int i = 0; i < n_; ++i) {
      mpz_class r = c[i] % h_[i][i];  // keep magnitudes in machine range first
      v[i] = r.get_si();
    }
    reduce(v);
    return v;
  }

  FieldElement to_element(const Elt& v) const { return K_->element_int(v); }

  Elt add(const Elt& p, const Elt& q) const {
    Elt v(n_);
    for (int i = 0; i < n_; ++i) v[i] = p[i] + q[i];
    reduce(v);
    return v;
  }

  Elt sub(const Elt& p, const Elt& q) const {
    Elt v(n_);
    for (int i = 0; i < n_; ++i) v[i] = p[i] - q[i];
    reduce(v);
    return v;
  }

  Elt neg(const Elt& p) const {
    Elt v(n_);
    for (int i = 0; i < n_; ++i) v[i] = -p[i];
    reduce(v);
    return v;
  }

  Elt mul(const Elt& p, const Elt& q) const {
    std::vector<__int128> prod(2 * n_ - 1, 0);
    for (int i = 0; i < n_; ++i) {
      if (p[i] == 0) continue;
      for (int j = 0; j < n_; ++j) {
        prod[i + j] += static_cast<__int128>(p[i]) * q[j];
      }
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
      __int128 c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (int i = 0; i < n_; ++i) prod[k - n_ + i] -= c * fc_[i];
    }
    Elt v(n_);
    reduce_wide(prod, v);
    return v;
  }

  // Unique box representative: v[i] in [0, h[i][i]) for every i.
  void reduce(Elt& v) const {
    std::vector<__int128> w(v.begin(), v.end());
    reduce_wide(w, v);
  }

  long encode(const Elt& reduced) const {
    long idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * h_[i][i] + reduced[i];
    return idx;
  }

  Elt element_at(long idx) const {
    Elt v(n_);
    for (int i = 0; i < n_; ++i) {
      v[i] = idx % h_[i][i];
      idx /= h_[i][i];
    }
    return v;
  }

 private:
  void reduce_wide(std::vector<__int128>& w, Elt& out) const {
    for (int i = 0; i < n_; ++i) {
      __int128 d = h_[i][i];
      __int128 q = w[i] / d;
      if (w[i] % d < 0) q -= 1;
      if (q != 0) {
        for (int j = i; j < n_; ++j) w[j] -= q * h_[i][j];
      }
    }
    for (int i = 0; i < n_; ++i) out[i] = static_cast<long>(w[i]);
  }

  const NumberField* K_;
  int n_;
  std::vector<std::vector<long>> h_;
  std::vector<long> fc_;  // defining polynomial, ascending, monic
  long count_ = 0;
};

inline ResidueRing residue_ring_mod(const NumberField& K, long m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  ZMat lat(K.degree, ZVec(K.degree, 0));
  for (int i = 0; i < K.degree; ++i) lat[i][i] = m;
  return ResidueRing(K, lat);
}

}  // namespace fuchsian
