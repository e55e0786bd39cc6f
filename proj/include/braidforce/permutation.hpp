#pragma once

#include <vector>

namespace braidforce {

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int a) const { return images_[a]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<int>& images() const { return images_; }

  // (p * q)(a) = p(q(a))
  Permutation operator*(const Permutation& q) const;
  Permutation pow(int k) const;
  Permutation inverted() const;
  std::vector<std::vector<int>> cycles() const;
  bool is_identity() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }

private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

} // namespace braidforce
