// Copyright 2026 The qds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense inner loops shared by the whole library. Each parallel kernel has a
// serial reference twin with the same floating-point operation order, so the
// two produce bitwise-identical results and the reference stays usable as a
// test oracle and benchmark baseline.

#include <cstddef>
#include <omp.h>

namespace qds::kernels {

/// Below this many multiply-adds the OpenMP fork costs more than it saves.
inline constexpr std::size_t kParallelWorkThreshold = 32 * 32 * 32;

/// C (n×m) = A (n×k) · B (k×m), all row-major.
template <class T>
void matmul_reference(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
                      std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    T* crow = c + i * m;
    for (std::size_t j = 0; j < m; ++j) crow[j] = T{};
    for (std::size_t l = 0; l < k; ++l) {
      const T av = a[i * k + l];
      const T* brow = b + l * m;
      for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
  }
}

template <class T>
void matmul_parallel(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
                     std::size_t m) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    T* crow = c + i * m;
    for (std::size_t j = 0; j < m; ++j) crow[j] = T{};
    for (std::size_t l = 0; l < k; ++l) {
      const T av = a[i * k + l];
      const T* brow = b + l * m;
      for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
  }
}

template <class T>
void matmul(const T* a, const T* b, T* c, std::size_t n, std::size_t k, std::size_t m) {
  if (n * k * m >= kParallelWorkThreshold && n > 1) {
    matmul_parallel(a, b, c, n, k, m);
  } else {
    matmul_reference(a, b, c, n, k, m);
  }
}

/// Runs body(i) for i in [0, n). Bodies must write only to index-owned
/// slots; callers reduce afterwards in index order, which keeps every
/// result independent of the thread schedule.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace qds::kernels
