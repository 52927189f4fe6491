#pragma once

// Text formats for keys and ciphertexts: one polynomial per line, written as
// "N modulus c_0 c_1 ... c_{N-1}". Blank lines and lines starting with '#' are
// skipped on input.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ntrulab/error.hpp"
#include "ntrulab/ntru.hpp"
#include "ntrulab/ring.hpp"

namespace ntrulab::io {

using ring::ConvPoly;

struct PolyLine {
  ConvPoly poly;
  Integer modulus;
};

inline void write_poly_line(std::ostream& os, const ConvPoly& p, const Integer& modulus) {
  os << p.n() << ' ' << modulus;
  for (const auto& c : p.coeffs()) os << ' ' << c;
  os << '\n';
}

inline PolyLine parse_poly_line(const std::string& line) {
  std::istringstream in(line);
  std::size_t n = 0;
  Integer modulus;
  std::string token;
  if (!(in >> n >> token)) throw FormatError("polynomial line: missing 'N modulus' header");
  try {
    modulus = Integer(token);
  } catch (const std::exception&) {
    throw FormatError("polynomial line: bad modulus '" + token + "'");
  }
  IntVector coeffs;
  coeffs.reserve(n);
  while (in >> token) {
    try {
      coeffs.emplace_back(token);
    } catch (const std::exception&) {
      throw FormatError("polynomial line: bad coefficient '" + token + "'");
    }
  }
  if (n == 0 || coeffs.size() != n)
    throw FormatError("polynomial line: expected " + std::to_string(n) + " coefficients, got " +
                      std::to_string(coeffs.size()));
  return {ConvPoly(std::move(coeffs)), modulus};
}

inline std::vector<PolyLine> read_poly_lines(std::istream& is) {
  std::vector<PolyLine> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_poly_line(line));
  }
  return out;
}

inline std::vector<PolyLine> read_poly_lines(const std::string& text) {
  std::istringstream in(text);
  return read_poly_lines(in);
}

// Public key file: the single line h.
inline void write_public_key(std::ostream& os, const ntru::KeyPair& kp, const ntru::NtruParams& params) {
  write_poly_line(os, kp.h, params.q);
}

// Private key file: f, g, fp, fq, h in that order (fp is written with modulus p).
inline void write_private_key(std::ostream& os, const ntru::KeyPair& kp, const ntru::NtruParams& params) {
  write_poly_line(os, kp.f, params.q);
  write_poly_line(os, kp.g, params.q);
  write_poly_line(os, kp.fp, params.p);
  write_poly_line(os, kp.fq, params.q);
  write_poly_line(os, kp.h, params.q);
}

inline ntru::KeyPair read_private_key(std::istream& is) {
  auto lines = read_poly_lines(is);
  if (lines.size() != 5) throw FormatError("private key: expected 5 polynomial lines");
  return {lines[0].poly, lines[1].poly, lines[2].poly, lines[3].poly, lines[4].poly};
}

inline ConvPoly read_single_poly(std::istream& is, const char* what) {
  auto lines = read_poly_lines(is);
  if (lines.size() != 1) throw FormatError(std::string(what) + ": expected exactly one polynomial line");
  return lines[0].poly;
}

}  // namespace ntrulab::io
