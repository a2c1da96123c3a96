#include "tbd/dataset_io.hpp"

#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace tbd {

namespace {

constexpr char kMagic[4] = {'T', 'B', 'D', 'Z'};
constexpr std::uint32_t kVersion = 1;
// Guard against nonsense headers before allocating payload buffers.
constexpr std::uint32_t kMaxDim = 1u << 24;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

template <typename T>
void put(std::FILE* f, const T& v) {
  if (std::fwrite(&v, sizeof(T), 1, f) != 1)
    throw std::runtime_error("dataset write failed");
}

template <typename T>
T get(std::FILE* f, const char* what) {
  T v;
  if (std::fread(&v, sizeof(T), 1, f) != 1)
    throw dataset_truncated_error(std::string("dataset truncated while reading ") +
                                  what);
  return v;
}

}  // namespace

void write_dataset(const std::string& path, const Dataset& ds) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::FILE* fp = f.get();

  const std::uint32_t K = std::uint32_t(ds.frames.size());
  const std::uint32_t I =
      ds.frames.empty() ? 0 : std::uint32_t(ds.frames[0].data.size());
  const std::uint32_t J =
      (I == 0) ? 0 : std::uint32_t(ds.frames[0].data[0].cols());

  if (std::fwrite(kMagic, 1, 4, fp) != 4)
    throw std::runtime_error("dataset write failed");
  put(fp, kVersion);
  put(fp, I);
  put(fp, J);
  put(fp, K);
  for (std::uint32_t i = 0; i < I; ++i)
    put(fp, std::uint32_t(ds.frames[0].data[i].rows()));
  double scale = ds.frames.empty() ? 1.0 : ds.frames[0].normalization_scale;
  put(fp, scale);

  for (const auto& fr : ds.frames) {
    for (std::uint32_t i = 0; i < I; ++i) {
      const MatXc& Z = fr.data[i];
      for (std::uint32_t j = 0; j < J; ++j) {
        for (int m = 0; m < Z.rows(); ++m) {
          put(fp, float(Z(m, int(j)).real()));
          put(fp, float(Z(m, int(j)).imag()));
        }
      }
    }
  }

  put(fp, std::uint32_t(ds.tracks.size()));
  for (const auto& tr : ds.tracks) {
    put(fp, std::uint32_t(tr.id));
    put(fp, std::uint32_t(tr.birth_step));
    put(fp, std::uint32_t(tr.death_step));
    for (const auto& x : tr.states)
      for (int d = 0; d < 4; ++d) put(fp, double(x[d]));
  }
}

Dataset read_dataset(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::FILE* fp = f.get();

  char magic[4];
  if (std::fread(magic, 1, 4, fp) != 4)
    throw dataset_truncated_error("dataset truncated while reading magic");
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw dataset_version_error("not a TBDZ dataset (bad magic bytes)");
  auto version = get<std::uint32_t>(fp, "version");
  if (version != kVersion)
    throw dataset_version_error("unsupported dataset version " +
                                std::to_string(version));
  auto I = get<std::uint32_t>(fp, "I");
  auto J = get<std::uint32_t>(fp, "J");
  auto K = get<std::uint32_t>(fp, "K");
  if (I > 64 || J > kMaxDim || K > kMaxDim)
    throw dataset_malformed_error("dataset header has implausible sizes");
  std::vector<std::uint32_t> M(I);
  for (std::uint32_t i = 0; i < I; ++i) {
    M[i] = get<std::uint32_t>(fp, "M");
    if (M[i] == 0 || M[i] > kMaxDim)
      throw dataset_malformed_error("dataset header has implausible M");
  }
  double scale = get<double>(fp, "scale");
  if (!(scale > 0) || !std::isfinite(scale))
    throw dataset_malformed_error("dataset header has invalid scale");

  Dataset ds;
  ds.frames.resize(K);
  for (std::uint32_t k = 0; k < K; ++k) {
    MeasurementFrame& fr = ds.frames[k];
    fr.step = int(k) + 1;
    fr.normalization_scale = scale;
    fr.data.resize(I);
    for (std::uint32_t i = 0; i < I; ++i) {
      fr.data[i].resize(int(M[i]), int(J));
      for (std::uint32_t j = 0; j < J; ++j) {
        for (std::uint32_t m = 0; m < M[i]; ++m) {
          float re = get<float>(fp, "sample");
          float im = get<float>(fp, "sample");
          fr.data[i](int(m), int(j)) = cxd(re, im);
        }
      }
    }
  }

  auto n_tracks = get<std::uint32_t>(fp, "track count");
  if (n_tracks > kMaxDim)
    throw dataset_malformed_error("dataset ground-truth block has implausible size");
  ds.tracks.resize(n_tracks);
  for (auto& tr : ds.tracks) {
    tr.id = int(get<std::uint32_t>(fp, "track id"));
    tr.birth_step = int(get<std::uint32_t>(fp, "track birth"));
    tr.death_step = int(get<std::uint32_t>(fp, "track death"));
    if (tr.death_step < tr.birth_step)
      throw dataset_malformed_error("track death precedes birth");
    tr.states.resize(size_t(tr.death_step - tr.birth_step) + 1);
    for (auto& x : tr.states)
      for (int d = 0; d < 4; ++d) x[d] = get<double>(fp, "track state");
  }
  return ds;
}

}  // namespace tbd
