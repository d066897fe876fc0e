#include "diskmeans/csv.hpp"

#include <charconv>
#include <string>

namespace diskmeans {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string scan_to_csv(const std::vector<ScanRecord>& records) {
  std::string out = "p,alpha,k,x,value,classification\n";
  for (const auto& r : records) {
    out += format_double(r.p);
    out += ',';
    out += format_double(r.alpha);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.witness_x);
    out += ',';
    out += format_double(r.min_d);
    out += ',';
    out += to_string(r.classification);
    out += '\n';
  }
  return out;
}

std::string profile_to_csv(double p, double alpha, int k,
                           const ConvexityProfile& prof) {
  std::string out = "p,alpha,k,x,value,classification\n";
  const char* verdict = to_string(prof.classification);
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    out += format_double(p);
    out += ',';
    out += format_double(alpha);
    out += ',';
    out += std::to_string(k);
    out += ',';
    out += format_double(prof.grid[i]);
    out += ',';
    out += format_double(prof.dvals[i]);
    out += ',';
    out += verdict;
    out += '\n';
  }
  return out;
}

std::string reports_to_csv(const std::vector<DiagnosticReport>& reports) {
  std::string out = "claim_id,lambda,alpha,status,worst_violation,witness_x\n";
  for (const auto& r : reports) {
    out += r.claim_id;
    out += ',';
    out += format_double(r.lambda);
    out += ',';
    out += format_double(r.alpha);
    out += ',';
    out += to_string(r.status);
    out += ',';
    out += format_double(r.worst_violation);
    out += ',';
    out += format_double(r.witness_x);
    out += '\n';
  }
  return out;
}

}  // namespace diskmeans
