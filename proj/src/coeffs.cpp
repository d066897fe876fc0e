#include "diskmeans/coeffs.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "diskmeans/csv.hpp"
#include "diskmeans/errors.hpp"

namespace diskmeans {

Coefficients load_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open coefficient file: " + path);
  Coefficients c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> re)) {
      std::string rest;
      if (ls.clear(), ls >> rest) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected two numbers");
      }
      continue;  // blank or comment-only line
    }
    if (!(ls >> im)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two numbers");
    }
    std::string rest;
    if (ls >> rest) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": trailing text after the pair");
    }
    c.emplace_back(re, im);
  }
  return c;
}

void save_coefficients(const Coefficients& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write coefficient file: " + path);
  for (const auto& a : c) {
    out << format_double(a.real()) << ' ' << format_double(a.imag()) << '\n';
  }
  if (!out) throw io_error("error while writing: " + path);
}

}  // namespace diskmeans
