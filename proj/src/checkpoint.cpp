#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "codedc/dnn.hpp"

namespace codedc {

// Checkpoint file layout (all integers and doubles little-endian):
//   bytes  0..3   magic "CDC1"
//   bytes  4..7   format version (uint32, currently 1)
//   bytes  8..11  layer count L (uint32)
//   bytes 12..15  iteration index (uint32)
//   then L+1 uint32 layer widths N_0..N_L,
//   then for each layer l the N_l x N_{l-1} weight matrix, row-major doubles,
//   then the uint64 RNG root seed.

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes little-endian");

namespace {

constexpr char kMagic[4] = {'C', 'D', 'C', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError("checkpoint file truncated");
    return value;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open checkpoint file for writing: " + path);

    out.write(kMagic, 4);
    write_pod(out, kVersion);
    write_pod(out, static_cast<std::uint32_t>(checkpoint.weights.size()));
    write_pod(out, checkpoint.iteration);

    if (checkpoint.weights.empty()) throw IoError("checkpoint has no layers");
    write_pod(out, static_cast<std::uint32_t>(checkpoint.weights.front().cols()));
    for (const Mat& w : checkpoint.weights) write_pod(out, static_cast<std::uint32_t>(w.rows()));
    for (const Mat& w : checkpoint.weights)
        out.write(reinterpret_cast<const char*>(w.data().data()),
                  static_cast<std::streamsize>(w.data().size() * sizeof(double)));
    write_pod(out, checkpoint.rng_seed);
    if (!out) throw IoError("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint file: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) throw IoError("not a checkpoint file: " + path);
    const auto version = read_pod<std::uint32_t>(in);
    if (version != kVersion) throw IoError("unsupported checkpoint version " + std::to_string(version));
    const auto layers = read_pod<std::uint32_t>(in);
    Checkpoint cp;
    cp.iteration = read_pod<std::uint32_t>(in);

    std::vector<std::uint32_t> dims(layers + 1);
    for (auto& d : dims) d = read_pod<std::uint32_t>(in);

    for (std::uint32_t l = 1; l <= layers; ++l) {
        const int rows = static_cast<int>(dims[l]);
        const int cols = static_cast<int>(dims[l - 1]);
        std::vector<double> entries(static_cast<std::size_t>(rows) * cols);
        in.read(reinterpret_cast<char*>(entries.data()),
                static_cast<std::streamsize>(entries.size() * sizeof(double)));
        if (!in) throw IoError("checkpoint file truncated");
        cp.weights.emplace_back(rows, cols, std::move(entries));
    }
    cp.rng_seed = read_pod<std::uint64_t>(in);
    return cp;
}

}  // namespace codedc
