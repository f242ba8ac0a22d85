#include "ymlab/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstring>
#include <fstream>

namespace ymlab {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

constexpr char kMagic[4] = {'Y', 'M', 'B', 'G'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw io_error("truncated background container");
  return v;
}

}  // namespace

void write_background(const std::filesystem::path& path, const BackgroundField& bg) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  for (int mu = 0; mu < 4; ++mu) put<std::uint32_t>(os, static_cast<std::uint32_t>(bg.geometry().extent(mu)));
  put<double>(os, bg.geometry().spacing());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(bg.algebra().family()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(bg.algebra().n()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(bg.dim()));
  const BackgroundParams& p = bg.params();
  put<std::uint8_t>(os, static_cast<std::uint8_t>(p.kind));
  put<std::uint8_t>(os, 0);
  put<std::uint8_t>(os, 0);
  put<std::uint8_t>(os, 0);
  put<std::uint64_t>(os, p.seed);
  put<double>(os, p.strength);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(p.plane_mu));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(p.plane_nu));
  put<double>(os, p.amplitude);
  std::vector<double> dir = p.color_dir;
  dir.resize(static_cast<size_t>(bg.dim()), 0.0);
  for (double v : dir) put<double>(os, v);
  const std::vector<double>& b = bg.b_raw();
  os.write(reinterpret_cast<const char*>(b.data()),
           static_cast<std::streamsize>(b.size() * sizeof(double)));
  if (!os) throw io_error("write failed: " + path.string());
}

BackgroundField read_background(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw io_error("not a background container: " + path.string());
  if (get<std::uint32_t>(is) != kVersion) throw io_error("unsupported container version");
  std::array<int, 4> extents;
  for (int mu = 0; mu < 4; ++mu) extents[static_cast<size_t>(mu)] = static_cast<int>(get<std::uint32_t>(is));
  const double spacing = get<double>(is);
  const auto family = static_cast<AlgebraFamily>(get<std::uint32_t>(is));
  const int n = static_cast<int>(get<std::uint32_t>(is));
  const int d = static_cast<int>(get<std::uint32_t>(is));

  BackgroundParams p;
  p.kind = static_cast<BackgroundKind>(get<std::uint8_t>(is));
  get<std::uint8_t>(is);
  get<std::uint8_t>(is);
  get<std::uint8_t>(is);
  p.seed = get<std::uint64_t>(is);
  p.strength = get<double>(is);
  p.plane_mu = static_cast<int>(get<std::uint32_t>(is));
  p.plane_nu = static_cast<int>(get<std::uint32_t>(is));
  p.amplitude = get<double>(is);
  p.color_dir.resize(static_cast<size_t>(d));
  for (double& v : p.color_dir) v = get<double>(is);

  auto geom = std::make_shared<LatticeGeometry>(extents, spacing);
  auto alg = std::make_shared<LieAlgebra>(LieAlgebra::build(family, n));
  if (alg->dim() != d) throw io_error("container dimension disagrees with algebra");

  std::vector<double> b(static_cast<size_t>(geom->nsites()) * 4 * d);
  is.read(reinterpret_cast<char*>(b.data()), static_cast<std::streamsize>(b.size() * sizeof(double)));
  if (!is) throw io_error("truncated B payload");
  if (p.kind == BackgroundKind::zero || p.kind == BackgroundKind::constant_abelian ||
      p.kind == BackgroundKind::random_smooth || p.kind == BackgroundKind::transformed)
    return background_from_b(geom, alg, p, std::move(b));
  throw io_error("unknown background kind tag");
}

void write_trace_csv(const std::filesystem::path& path, const HeatTraceSeries& series) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open " + path.string() + " for writing");
  os << "t,value,stderr,method\n";
  for (size_t j = 0; j < series.t.size(); ++j)
    os << fmt17(series.t[j]) << "," << fmt17(series.value[j]) << "," << fmt17(series.stderr_[j])
       << "," << series.method.tag() << "\n";
  if (!os) throw io_error("write failed: " + path.string());
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (is) {
    is.read(buf, sizeof(buf));
    EVP_DigestUpdate(ctx, buf, static_cast<size_t>(is.gcount()));
  }
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, out, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s.push_back(hex[out[i] >> 4]);
    s.push_back(hex[out[i] & 0xF]);
  }
  return s;
}

}  // namespace ymlab
