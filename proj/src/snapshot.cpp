#include "nemflow/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "nemflow/errors.hpp"

namespace nemflow {

namespace {

constexpr char kMagic[5] = {'N', 'E', 'M', 'Q', '1'};

// This format is defined little-endian; the build targets little-endian
// hosts, so values are written raw.
static_assert(sizeof(double) == 8);

void put_u32(std::string& out, uint32_t v) { out.append(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::string& out, double v) { out.append(reinterpret_cast<const char*>(&v), 8); }

void put_array(std::string& out, const Array2& a, int ni, int nj) {
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i) put_f64(out, a(i, j));
}

struct Reader {
    const std::string& buf;
    size_t pos = 0;
    const std::string& path;

    void need(size_t n) {
        if (pos + n > buf.size()) throw IoError(path + ": truncated (size mismatch vs header)");
    }
    uint32_t u32() {
        need(4);
        uint32_t v;
        std::memcpy(&v, buf.data() + pos, 4);
        pos += 4;
        return v;
    }
    double f64() {
        need(8);
        double v;
        std::memcpy(&v, buf.data() + pos, 8);
        pos += 8;
        return v;
    }
    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(buf[pos++]);
    }
    void array(Array2& a, int ni, int nj) {
        for (int j = 0; j < nj; ++j)
            for (int i = 0; i < ni; ++i) a(i, j) = f64();
    }
};

}  // namespace

void snapshot_write(const SimState& state, const std::string& path) {
    const Grid& g = state.d.grid;
    std::string out;
    out.append(kMagic, 5);
    put_u32(out, static_cast<uint32_t>(g.nx));
    put_u32(out, static_cast<uint32_t>(g.ny));
    put_u32(out, static_cast<uint32_t>(state.d.m));
    put_f64(out, g.Lx);
    put_f64(out, g.Ly);
    put_f64(out, state.t);
    out.push_back(static_cast<char>(g.bc_mode));
    put_array(out, state.flow.v.u, g.nx + 1, g.ny);
    put_array(out, state.flow.v.v, g.nx, g.ny + 1);
    put_array(out, state.flow.p.a, g.nx, g.ny);
    for (int c = 0; c < state.d.m; ++c) put_array(out, state.d.c[c], g.nx, g.ny);

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path);
}

SimState snapshot_read(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    if (buf.size() < 5 || std::memcmp(buf.data(), kMagic, 5) != 0)
        throw IoError(path + ": bad magic (not a NEMQ1 snapshot)");
    Reader r{buf, 5, path};
    const int nx = static_cast<int>(r.u32());
    const int ny = static_cast<int>(r.u32());
    const int m = static_cast<int>(r.u32());
    const double Lx = r.f64();
    const double Ly = r.f64();
    const double t = r.f64();
    const uint8_t tag = r.u8();
    if (tag > 2) throw IoError(path + ": bad bc_mode tag");
    if (m != 2 && m != 3) throw IoError(path + ": bad component count");
    Grid g(nx, ny, Lx, Ly, static_cast<BcMode>(tag));

    SimState state(g, m);
    state.t = t;
    r.array(state.flow.v.u, nx + 1, ny);
    r.array(state.flow.v.v, nx, ny + 1);
    r.array(state.flow.p.a, nx, ny);
    for (int c = 0; c < m; ++c) r.array(state.d.c[c], nx, ny);
    if (r.pos != buf.size()) throw IoError(path + ": size mismatch vs header (trailing bytes)");
    return state;
}

}  // namespace nemflow
