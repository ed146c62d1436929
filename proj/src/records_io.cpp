#include "nemflow/records_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "nemflow/errors.hpp"

namespace nemflow {

const char* const kRecordsHeader =
    "t,kinetic,elastic,potential,total,dissip_visc,dissip_dir,A,v_H1,residual_L2,div_inf";

namespace {

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

void write_records(const std::vector<EnergyRecord>& records, const std::string& path) {
    std::string out(kRecordsHeader);
    out += '\n';
    for (const auto& r : records) {
        const double vals[11] = {r.t,           r.kinetic,    r.elastic, r.potential,
                                 r.total,       r.dissip_visc, r.dissip_dir, r.A,
                                 r.v_H1,        r.residual_L2, r.div_inf};
        for (int k = 0; k < 11; ++k) {
            if (k) out += ',';
            append_g17(out, vals[k]);
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path);
}

std::vector<EnergyRecord> read_records(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(f, line)) throw IoError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordsHeader)
        throw IoError(path + ": header mismatch (expected '" + kRecordsHeader + "')");

    std::vector<EnergyRecord> out;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double vals[11];
        const char* p = line.c_str();
        for (int k = 0; k < 11; ++k) {
            char* end = nullptr;
            vals[k] = std::strtod(p, &end);
            if (end == p)
                throw IoError(path + ":" + std::to_string(lineno) + ": malformed value in column " +
                              std::to_string(k + 1));
            p = end;
            if (k < 10) {
                if (*p != ',')
                    throw IoError(path + ":" + std::to_string(lineno) + ": expected ',' after column " +
                                  std::to_string(k + 1));
                ++p;
            }
        }
        if (*p != '\0')
            throw IoError(path + ":" + std::to_string(lineno) + ": trailing characters");
        EnergyRecord r;
        r.t = vals[0];
        r.kinetic = vals[1];
        r.elastic = vals[2];
        r.potential = vals[3];
        r.total = vals[4];
        r.dissip_visc = vals[5];
        r.dissip_dir = vals[6];
        r.A = vals[7];
        r.v_H1 = vals[8];
        r.residual_L2 = vals[9];
        r.div_inf = vals[10];
        out.push_back(r);
    }
    return out;
}

}  // namespace nemflow
