#include "jc2a/tensor_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "jc2a/errors.hpp"

namespace jc2a {

namespace {

constexpr char kMagic[4] = {'J', 'C', 'A', 'T'};
constexpr std::uint8_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "JCAT I/O assumes a little-endian host");

template <typename T>
constexpr std::uint8_t element_code() {
    if constexpr (std::is_same_v<T, float>) return 0;
    else return 1;
}

void write_exact(std::ofstream& out, const void* p, std::size_t n, const std::filesystem::path& path) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!out) throw IoError("write failed: " + path.string());
}

void read_exact(std::ifstream& in, void* p, std::size_t n, const std::filesystem::path& path) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n)) {
        throw IoError("truncated file: " + path.string());
    }
}

struct Header {
    std::uint8_t elem = 0;
    Shape shape;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
    if (!in) throw IoError("cannot open " + path.string());
    char magic[4];
    read_exact(in, magic, 4, path);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError("bad magic in " + path.string());
    }
    std::uint8_t version = 0, elem = 0, rank = 0;
    read_exact(in, &version, 1, path);
    if (version != kVersion) {
        throw FormatError("unsupported version " + std::to_string(version) + " in " + path.string());
    }
    read_exact(in, &elem, 1, path);
    if (elem > 1) throw FormatError("unknown element type in " + path.string());
    read_exact(in, &rank, 1, path);
    Header h;
    h.elem = elem;
    h.shape.resize(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        std::uint32_t d = 0;
        read_exact(in, &d, 4, path);
        if (d == 0) throw FormatError("zero dimension in " + path.string());
        h.shape[i] = d;
    }
    return h;
}

}  // namespace

template <typename T>
void save_jcat(const TensorT<T>& t, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_exact(out, kMagic, 4, path);
    const std::uint8_t version = kVersion, elem = element_code<T>();
    const std::uint8_t rank = static_cast<std::uint8_t>(t.rank());
    if (t.rank() > 255) throw ShapeError("JCAT supports rank <= 255");
    write_exact(out, &version, 1, path);
    write_exact(out, &elem, 1, path);
    write_exact(out, &rank, 1, path);
    for (std::size_t i = 0; i < t.rank(); ++i) {
        if (t.dim(i) > 0xFFFFFFFFull) throw ShapeError("JCAT dimension exceeds u32");
        const std::uint32_t d = static_cast<std::uint32_t>(t.dim(i));
        write_exact(out, &d, 4, path);
    }
    write_exact(out, t.ptr(), t.numel() * sizeof(T), path);
}

template <typename T>
TensorT<T> load_jcat(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    const Header h = read_header(in, path);
    if (h.elem != element_code<T>()) {
        throw FormatError("element type mismatch in " + path.string());
    }
    const std::size_t n = shape_numel(h.shape);
    std::vector<T> data(n);
    read_exact(in, data.data(), n * sizeof(T), path);
    return TensorT<T>(h.shape, std::move(data));
}

int jcat_element_type(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return read_header(in, path).elem;
}

template void save_jcat<float>(const TensorT<float>&, const std::filesystem::path&);
template void save_jcat<double>(const TensorT<double>&, const std::filesystem::path&);
template TensorT<float> load_jcat<float>(const std::filesystem::path&);
template TensorT<double> load_jcat<double>(const std::filesystem::path&);

}  // namespace jc2a
