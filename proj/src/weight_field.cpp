#include "lpp/weight_field.hpp"

#include <stdexcept>

namespace lpp {

WeightField sample_field(const WeightDistribution& dist, int64_t width,
                         int64_t height, uint64_t seed) {
  dist.validate();
  if (width < 1 || height < 1)
    throw std::invalid_argument("field extents must be at least 1x1");
  if (width * height > kMaxFieldSites)
    throw std::length_error("field exceeds the memory budget");

  WeightField f;
  f.width = width;
  f.height = height;
  f.seed = seed;
  f.dist = dist;
  f.values.resize(static_cast<size_t>(width * height));
  const FieldView view{dist, seed};
  for (int64_t y = 0; y < height; ++y)
    for (int64_t x = 0; x < width; ++x) f.values[y * width + x] = view.at(x, y);
  return f;
}

WeightField WeightField::transposed() const {
  WeightField t;
  t.width = height;
  t.height = width;
  t.seed = seed;
  t.dist = dist;
  t.values.resize(values.size());
  for (int64_t y = 0; y < t.height; ++y)
    for (int64_t x = 0; x < t.width; ++x) t.values[y * t.width + x] = at(y, x);
  return t;
}

}  // namespace lpp
