#include "fracns/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fracns {

namespace {

constexpr char magic[8] = {'F', 'R', 'N', 'S', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t version = 1;

template <class T>
void put(std::vector<char>& buf, T v)
{
    char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    buf.insert(buf.end(), bytes, bytes + sizeof(T));
}

class Reader {
public:
    explicit Reader(std::vector<char> data) : data_(std::move(data)) {}

    template <class T>
    T get()
    {
        if (pos_ + sizeof(T) > data_.size())
            throw std::runtime_error("checkpoint is truncated");
        char bytes[sizeof(T)];
        std::memcpy(bytes, data_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big)
            std::reverse(bytes, bytes + sizeof(T));
        pos_ += sizeof(T);
        T v;
        std::memcpy(&v, bytes, sizeof(T));
        return v;
    }

    bool at_end() const { return pos_ == data_.size(); }

private:
    std::vector<char> data_;
    std::size_t pos_ = 0;
};

} // namespace

void write_checkpoint(const std::string& path, const State& s, const FluidParams& p)
{
    validate_state(s);
    const GridSpec& g = s.grid().spec();
    std::vector<char> buf(magic, magic + 8);
    put<std::uint32_t>(buf, version);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.dim));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n));
    put<double>(buf, g.box_length);
    put<double>(buf, g.dealias_fraction);
    put<double>(buf, p.A);
    put<double>(buf, p.gamma);
    put<double>(buf, p.mu);
    put<double>(buf, p.alpha);
    put<double>(buf, s.t);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(1 + s.u.size()));
    s.for_each([&buf](const SpectralField& f) {
        for (const auto& c : f.coeffs()) {
            put<double>(buf, c.real());
            put<double>(buf, c.imag());
        }
    });

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out)
        throw std::runtime_error("failed writing " + path);
}

Checkpoint read_checkpoint(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < 8 || std::memcmp(data.data(), magic, 8) != 0)
        throw std::runtime_error(path + " is not a checkpoint");
    Reader r(std::vector<char>(data.begin() + 8, data.end()));
    if (r.get<std::uint32_t>() != version)
        throw std::runtime_error(path + ": unsupported checkpoint version");
    GridSpec g;
    g.dim = static_cast<int>(r.get<std::uint32_t>());
    g.n = static_cast<int>(r.get<std::uint32_t>());
    g.box_length = r.get<double>();
    g.dealias_fraction = r.get<double>();
    const double A = r.get<double>();
    const double gamma = r.get<double>();
    const double mu = r.get<double>();
    const double alpha = r.get<double>();
    const double t = r.get<double>();
    const auto nfields = r.get<std::uint32_t>();
    if (nfields != static_cast<std::uint32_t>(g.dim + 1))
        throw std::runtime_error(path + ": field count does not match dimension");

    Checkpoint ck{State::zero(Grid::make(g), t), derive_constants(A, gamma, mu, alpha)};
    ck.state.for_each([&r](SpectralField& f) {
        for (auto& c : f.coeffs()) {
            const double re = r.get<double>();
            const double im = r.get<double>();
            c = cplx(re, im);
        }
    });
    if (!r.at_end())
        throw std::runtime_error(path + ": trailing bytes after the last field");
    return ck;
}

} // namespace fracns
