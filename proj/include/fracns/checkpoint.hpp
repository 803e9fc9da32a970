#pragma once

#include "fracns/params.hpp"
#include "fracns/state.hpp"

#include <string>

namespace fracns {

/// Binary checkpoint, all values little-endian:
///
///   char[8]  "FRNSCKPT"
///   u32      version (1)
///   u32      dim
///   u32      n
///   f64      box_length
///   f64      dealias_fraction
///   f64      A, gamma, mu, alpha
///   f64      t
///   u32      number of fields (1 + dim)
///   then for rho, u_1, .., u_dim: n^dim (re, im) f64 pairs in the grid's
///   row-major order (axis 0 slowest).
///
/// Reading back reproduces every coefficient bit for bit.
void write_checkpoint(const std::string& path, const State& s, const FluidParams& p);

struct Checkpoint {
    State state;
    FluidParams params;
};

/// Throws std::runtime_error on a malformed or truncated file.
Checkpoint read_checkpoint(const std::string& path);

} // namespace fracns
