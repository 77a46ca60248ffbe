/*
Copyright (c) 2026 The sparse-alloc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

namespace sparsealloc {

/// Compensated (Kahan) accumulator. All order-sensitive sums in the
/// engines go through this type, always in ascending vertex-id order, so
/// results are reproducible.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// base^e for e >= 0 by binary exponentiation. This is the one canonical
/// way priority values (1+eps)^j are materialized as doubles; every
/// module uses it so that equal exponents always yield bitwise equal
/// values.
inline double pow_uint(double base, unsigned e) {
  double result = 1.0;
  double p = base;
  while (e != 0) {
    if (e & 1u) result *= p;
    p *= p;
    e >>= 1;
  }
  return result;
}

/// (1+eps)^j for any integer j.
inline double priority_value(double eps, int j) {
  if (j >= 0) return pow_uint(1.0 + eps, static_cast<unsigned>(j));
  return 1.0 / pow_uint(1.0 + eps, static_cast<unsigned>(-j));
}

}  // namespace sparsealloc
