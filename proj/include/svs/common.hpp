#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svs {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Deterministic RNG. All sampling in the project goes through this class so
// that a seed fully determines corpora, training runs and generated output.
// std::mt19937_64 has a standard-fixed algorithm; the uniform/normal
// derivations below are ours, so no reliance on libstdc++ distribution
// internals.
// ---------------------------------------------------------------------------
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive on both ends
  int uniform_int(int lo, int hi) {
    require(hi >= lo, "uniform_int: empty range");
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  // Box-Muller, two uniforms per draw (no cached second value, keeps the
  // serialized state equal to the mt19937_64 state).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  Mat normal_mat(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

  Mat uniform_mat(int rows, int cols, double lo, double hi) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  // Sample an index from unnormalized non-negative weights.
  int categorical(const Vec& weights) {
    double total = weights.sum();
    require(total > 0.0, "categorical: all weights zero");
    double r = uniform() * total;
    for (int k = 0; k < weights.size(); ++k) {
      r -= weights[k];
      if (r < 0.0) return k;
    }
    return static_cast<int>(weights.size()) - 1;
  }

  std::string save_state() const {
    std::ostringstream os;
    os << gen_;
    return os.str();
  }

  void load_state(const std::string& s) {
    std::istringstream is(s);
    is >> gen_;
    require(!is.fail(), "Rng::load_state: malformed state string");
  }

 private:
  std::mt19937_64 gen_;
};

// splitmix64; used to derive independent sub-stream seeds from one root seed.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t root, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  return mix_seed(mix_seed(mix_seed(root ^ mix_seed(a)) ^ mix_seed(b)) ^ mix_seed(c));
}

// ---------------------------------------------------------------------------
// Little-endian binary IO (explicit byte order, independent of host).
// ---------------------------------------------------------------------------
namespace io {

inline void write_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  require(is.gcount() == 4, "binary read: truncated u32");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

inline void write_u64(std::ostream& os, uint64_t v) {
  write_u32(os, static_cast<uint32_t>(v & 0xffffffffULL));
  write_u32(os, static_cast<uint32_t>(v >> 32));
}

inline uint64_t read_u64(std::istream& is) {
  uint64_t lo = read_u32(is);
  uint64_t hi = read_u32(is);
  return lo | (hi << 32);
}

inline void write_f32(std::ostream& os, float v) {
  uint32_t u;
  std::memcpy(&u, &v, 4);
  write_u32(os, u);
}

inline float read_f32(std::istream& is) {
  uint32_t u = read_u32(is);
  float v;
  std::memcpy(&v, &u, 4);
  return v;
}

inline void write_f64(std::ostream& os, double v) {
  uint64_t u;
  std::memcpy(&u, &v, 8);
  write_u64(os, u);
}

inline double read_f64(std::istream& is) {
  uint64_t u = read_u64(is);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

inline void write_string(std::ostream& os, const std::string& s) {
  write_u32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::istream& is) {
  uint32_t n = read_u32(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  require(static_cast<uint32_t>(is.gcount()) == n, "binary read: truncated string");
  return s;
}

inline void write_mat_f64(std::ostream& os, const Mat& m) {
  write_u32(os, static_cast<uint32_t>(m.rows()));
  write_u32(os, static_cast<uint32_t>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) write_f64(os, m(i, j));
}

inline Mat read_mat_f64(std::istream& is) {
  uint32_t r = read_u32(is);
  uint32_t c = read_u32(is);
  Mat m(r, c);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < c; ++j) m(i, j) = read_f64(is);
  return m;
}

}  // namespace io

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), "cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot open file for writing: " + path);
  f << content;
}

}  // namespace svs
