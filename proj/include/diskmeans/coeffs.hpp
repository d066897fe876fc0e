#pragma once

#include <string>

#include "diskmeans/means.hpp"

namespace diskmeans {

// Coefficient file format: one "re im" pair per line, line number = power of
// z; blank lines skipped, '#' starts a comment.  Throws io_error when the
// file cannot be opened and std::runtime_error (with the line number) on a
// malformed line.
Coefficients load_coefficients(const std::string& path);

void save_coefficients(const Coefficients& c, const std::string& path);

}  // namespace diskmeans
