#pragma once
// ---------------------------------------------------------------------------
// dataset_io.hpp -- binary dataset serialization.  Little-endian layout:
//
//   magic "TBDZ" | u32 version | u32 I | u32 J | u32 K | u32 M[i] x I |
//   f64 normalization_scale |
//   K frames, each: for i, for j: M_i complex64 entries (f32 re, f32 im) |
//   u32 n_tracks, per track: u32 id | u32 birth | u32 death |
//     (death - birth + 1) state 4-vectors as f64
//
// Complex samples are stored at complex64 precision; writing a dataset read
// back from disk reproduces the file byte-for-byte.
// ---------------------------------------------------------------------------

#include "tbd/scenario.hpp"

#include <stdexcept>
#include <string>

namespace tbd {

/// Wrong magic or unsupported format version.
struct dataset_version_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// File ends before the declared payload is complete.
struct dataset_truncated_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Header fields are internally inconsistent (e.g. absurd sizes).
struct dataset_malformed_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_dataset(const std::string& path, const Dataset& ds);
Dataset read_dataset(const std::string& path);

}  // namespace tbd
