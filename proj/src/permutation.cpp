#include "braidforce/permutation.hpp"
#include "braidforce/error.hpp"

namespace braidforce {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    const int t = images_[a];
    if (t < 0 || t >= n || inverse_[t] != -1)
      throw braid_error(errc::invalid_argument, "tau is not a permutation");
    inverse_[t] = a;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  for (int a = 0; a < n; ++a) v[a] = a;
  return Permutation(std::move(v));
}

Permutation Permutation::operator*(const Permutation& q) const {
  std::vector<int> v(size());
  for (int a = 0; a < size(); ++a) v[a] = images_[q(a)];
  return Permutation(std::move(v));
}

Permutation Permutation::pow(int k) const {
  Permutation r = identity(size());
  Permutation base = k < 0 ? inverted() : *this;
  for (int e = k < 0 ? -k : k; e > 0; e >>= 1) {
    if (e & 1) r = base * r;
    base = base * base;
  }
  return r;
}

Permutation Permutation::inverted() const { return Permutation(inverse_); }

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(size(), false);
  for (int a = 0; a < size(); ++a) {
    if (seen[a]) continue;
    std::vector<int> c;
    for (int x = a; !seen[x]; x = images_[x]) {
      seen[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool Permutation::is_identity() const {
  for (int a = 0; a < size(); ++a)
    if (images_[a] != a) return false;
  return true;
}

} // namespace braidforce
