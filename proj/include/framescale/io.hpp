#pragma once

#include "framescale/types.hpp"

#include <iosfwd>
#include <string>

namespace framescale {

enum class FrameFormat { Auto, Csv, Json };

/// CSV: one vector per row, comma-separated decimals; dimension inferred
/// from the row length. JSON: {"dim": N, "vectors": [[...], ...]}.
/// Auto sniffs a leading '{'. Throws InputError with the offending row on
/// ragged rows, non-numeric entries, zero vectors, or an empty file.
Frame parse_frame(std::istream& in, FrameFormat format = FrameFormat::Auto,
                  const Tolerances& tol = default_tolerances());

Frame parse_frame_file(const std::string& path,
                       FrameFormat format = FrameFormat::Auto,
                       const Tolerances& tol = default_tolerances());

/// Shortest round-trip decimal representation (17 significant digits).
std::string format_double(double x);

std::string frame_to_csv(const Frame& frame);

}  // namespace framescale
