#pragma once

#include <filesystem>
#include <string>

#include "jc2a/tensor.hpp"

namespace jc2a {

// JCAT binary tensor format, version 1.
//
//   magic   4 bytes  "JCAT"
//   version u8       1
//   elem    u8       0 = f32, 1 = f64
//   rank    u8
//   dims    rank x u32, little-endian
//   payload row-major elements, little-endian
//
// Round-trips are bit-exact. load_jcat<T> requires the stored element type
// to match T exactly; it never converts.

template <typename T>
void save_jcat(const TensorT<T>& t, const std::filesystem::path& path);

template <typename T>
TensorT<T> load_jcat(const std::filesystem::path& path);

// Element type stored in a JCAT file without loading the payload.
// Returns 0 for f32, 1 for f64.
int jcat_element_type(const std::filesystem::path& path);

}  // namespace jc2a
