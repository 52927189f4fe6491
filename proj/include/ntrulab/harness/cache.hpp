#pragma once

// On-disk cache of LLL-reduced M_a bases. Plain text:
//   NTRULAB-BASIS 1 N q y strategy seed delta
// followed by 2N lines of 2N integers. A loaded basis is accepted only if every
// row lies in L_a and |det| = q^N, so the rows generate exactly L_a.

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "ntrulab/attack.hpp"
#include "ntrulab/lattice.hpp"

namespace ntrulab::harness {

inline constexpr const char* kBasisMagic = "NTRULAB-BASIS";
inline constexpr int kBasisVersion = 1;

// Shortest text that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

struct BasisKey {
  std::size_t n = 0;
  Integer q;
  double y = 0;
  attack::AStrategy strategy = attack::AStrategy::algorithm1;
  std::uint64_t seed = 0;
  double delta = 0.99;

  std::string header() const {
    std::ostringstream os;
    os << kBasisMagic << ' ' << kBasisVersion << ' ' << n << ' ' << q << ' ' << format_double(y) << ' '
       << attack::to_string(strategy) << ' ' << seed << ' ' << format_double(delta);
    return os.str();
  }

  std::string file_name() const {
    std::ostringstream os;
    os << "ma_N" << n << "_q" << q << "_y" << format_double(y) << '_' << attack::to_string(strategy) << "_s" << seed
       << "_d" << format_double(delta) << ".basis";
    return os.str();
  }
};

inline void write_basis(std::ostream& os, const BasisKey& key, const lattice::LatticeBasis& b) {
  os << key.header() << '\n';
  for (std::size_t i = 0; i < b.rank(); ++i) {
    auto row = b.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
    os << '\n';
  }
}

// Checks that the rows generate L_a: each row satisfies v[N:] == v[:N] * a (mod q)
// and the determinant has absolute value q^N.
inline void validate_reduced_basis(const lattice::LatticeBasis& b, const ring::ConvPoly& a, const Integer& q) {
  const std::size_t n = a.n();
  if (b.rank() != 2 * n || b.dim() != 2 * n) throw CacheCorrupt("cached basis has the wrong shape");
  for (std::size_t i = 0; i < b.rank(); ++i) {
    auto row = b.row(i);
    const ring::ConvPoly head(IntVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n)));
    const ring::ConvPoly prod = ring::star_multiply(head, a);
    for (std::size_t j = 0; j < n; ++j) {
      Integer diff = (row[n + j] - prod[j]) % q;
      if (diff != 0) throw CacheCorrupt("cached basis row " + std::to_string(i) + " is not in L_a");
    }
  }
  const Integer det = abs(determinant(b.matrix()));
  if (det != pow(q, static_cast<unsigned>(n))) throw CacheCorrupt("cached basis has the wrong determinant");
}

inline lattice::LatticeBasis read_basis(std::istream& is, const BasisKey& key) {
  std::string header;
  if (!std::getline(is, header)) throw CacheCorrupt("empty basis cache file");
  if (header != key.header()) throw CacheCorrupt("basis cache header mismatch: '" + header + "'");
  const std::size_t m = 2 * key.n;
  IntMatrix rows(m, m);
  std::string line;
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(is, line)) throw CacheCorrupt("basis cache truncated at row " + std::to_string(i));
    std::istringstream ls(line);
    std::string tok;
    for (std::size_t c = 0; c < m; ++c) {
      if (!(ls >> tok)) throw CacheCorrupt("basis cache row " + std::to_string(i) + " is short");
      try {
        rows(i, c) = Integer(tok);
      } catch (const std::exception&) {
        throw CacheCorrupt("basis cache holds a non-integer entry '" + tok + "'");
      }
    }
    if (ls >> tok) throw CacheCorrupt("basis cache row " + std::to_string(i) + " is long");
  }
  while (std::getline(is, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw CacheCorrupt("trailing data in basis cache");
  return lattice::LatticeBasis(std::move(rows));
}

struct ReducedBasis {
  lattice::LatticeBasis basis;
  bool cache_hit = false;
  double lll_seconds = 0;
  std::optional<std::filesystem::path> path;
};

namespace detail {
inline std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

// Loads the reduced basis for `key` from `cache_dir`, or reduces M_a and stores it.
// Within a process the reduction for a key runs at most once at a time; across
// processes the write goes through a temporary file and a rename, and an existing
// entry is never overwritten.
inline ReducedBasis obtain_reduced_basis(const ring::ConvPoly& a, const BasisKey& key,
                                         const lattice::ReductionParams& params,
                                         const std::optional<std::filesystem::path>& cache_dir) {
  namespace fs = std::filesystem;
  std::lock_guard lock(detail::cache_mutex());
  ReducedBasis out;
  if (cache_dir) {
    out.path = *cache_dir / key.file_name();
    std::ifstream in(*out.path);
    if (in) {
      out.basis = read_basis(in, key);
      validate_reduced_basis(out.basis, a, key.q);
      out.cache_hit = true;
      return out;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  out.basis = lattice::lll_reduce(attack::build_M_a(a, key.q), params);
  out.lll_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cache_dir) {
    fs::create_directories(*cache_dir);
    std::ostringstream tag;
    tag << std::this_thread::get_id();
    const fs::path tmp = out.path->string() + ".tmp" + tag.str();
    {
      std::ofstream os(tmp);
      if (!os) throw std::runtime_error("cannot write basis cache in " + cache_dir->string());
      write_basis(os, key, out.basis);
    }
    std::error_code ec;
    if (fs::exists(*out.path)) fs::remove(tmp, ec);
    else fs::rename(tmp, *out.path);
  }
  return out;
}

}  // namespace ntrulab::harness
