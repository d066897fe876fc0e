#pragma once

#include <string>
#include <vector>

#include "diskmeans/convexity.hpp"
#include "diskmeans/diagnostics.hpp"
#include "diskmeans/scan.hpp"

namespace diskmeans {

// Shortest decimal form that parses back to the same double (up to 17
// significant digits), via std::to_chars.  Identical input bits always give
// identical text, which is what makes the CSV outputs byte-reproducible.
std::string format_double(double v);

// All CSV emitters share the schema "p,alpha,k,x,value,classification" with
// '\n' line endings and no trailing separator.

// One row per scan record: x = witness_x, value = min_d.
std::string scan_to_csv(const std::vector<ScanRecord>& records);

// One row per grid point: value = the curvature sample, classification = the
// profile's overall verdict on every row.
std::string profile_to_csv(double p, double alpha, int k,
                           const ConvexityProfile& prof);

// Claim reports use "claim_id,lambda,alpha,status,worst_violation,witness_x".
std::string reports_to_csv(const std::vector<DiagnosticReport>& reports);

}  // namespace diskmeans
