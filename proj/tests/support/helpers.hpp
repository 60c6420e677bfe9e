#pragma once

#include <gtest/gtest.h>

#include <optional>

#include "rwl/error.hpp"
#include "rwl/linalg.hpp"
#include "rwl/random.hpp"

namespace testing_support {

// Code of the rwl::Error thrown by f, or nullopt.
template <class F>
std::optional<rwl::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const rwl::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline rwl::StateVector random_vector(rwl::Rng& rng, std::size_t dim, double scale = 1.0) {
  std::vector<rwl::Complex> a(dim);
  for (auto& x : a) x = scale * rwl::Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return rwl::StateVector(a);
}

inline rwl::Sector random_sector(rwl::Rng& rng, std::size_t dim, std::size_t k) {
  std::vector<rwl::StateVector> vs;
  for (std::size_t i = 0; i < k; ++i) vs.push_back(random_vector(rng, dim));
  return rwl::Sector::span(vs);
}

}  // namespace testing_support
