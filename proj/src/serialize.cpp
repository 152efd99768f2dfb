#include "hoferlike/serialize.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hoferlike {

namespace {

constexpr char kFieldMagic[4] = {'H', 'L', 'F', '1'};
constexpr char kPathMagic[4] = {'H', 'L', 'P', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t get_u32(std::istream& is, const char* what) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw std::runtime_error(std::string("truncated file: missing ") + what);
    return v;
}

void put_doubles(std::ostream& os, const std::vector<double>& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void get_doubles(std::istream& is, std::vector<double>& v, const char* what) {
    if (!is.read(reinterpret_cast<char*>(v.data()),
                 static_cast<std::streamsize>(v.size() * sizeof(double))))
        throw std::runtime_error(std::string("truncated file: missing ") + what);
}

void expect_magic(std::istream& is, const char magic[4], const char* container) {
    char buf[4];
    if (!is.read(buf, 4))
        throw std::runtime_error(std::string("truncated file: missing ") + container + " header");
    if (std::memcmp(buf, magic, 4) != 0)
        throw std::runtime_error(std::string("bad magic for ") + container + " container");
}

void write_field_header(std::ostream& os, FieldType type, int n, int comps) {
    os.write(kFieldMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(type));
    put_u32(os, static_cast<std::uint32_t>(n));
    put_u32(os, static_cast<std::uint32_t>(comps));
}

struct FieldHeader {
    FieldType type;
    int n;
    int comps;
};

FieldHeader read_field_header(std::istream& is) {
    expect_magic(is, kFieldMagic, "field");
    FieldHeader h;
    h.type = static_cast<FieldType>(get_u32(is, "field type"));
    h.n = static_cast<int>(get_u32(is, "field resolution"));
    h.comps = static_cast<int>(get_u32(is, "field component count"));
    const int expected = (h.type == FieldType::scalar) ? 1 : 2;
    if (h.comps != expected) throw std::runtime_error("field component count inconsistent with type");
    return h;
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& f) {
    write_field_header(os, FieldType::scalar, f.grid.n(), 1);
    put_doubles(os, f.values);
}

void write_field(std::ostream& os, const OneFormField& f) {
    write_field_header(os, FieldType::oneform, f.grid.n(), 2);
    put_doubles(os, f.a);
    put_doubles(os, f.b);
}

void write_field(std::ostream& os, const VectorField& f, FieldType type) {
    if (type != FieldType::vector && type != FieldType::displacement)
        throw std::invalid_argument("vector payloads must be typed vector or displacement");
    write_field_header(os, type, f.grid.n(), 2);
    put_doubles(os, f.vx);
    put_doubles(os, f.vy);
}

ScalarField read_scalar_field(std::istream& is) {
    const FieldHeader h = read_field_header(is);
    if (h.type != FieldType::scalar) throw std::runtime_error("expected a scalar field container");
    ScalarField f{TorusGrid(h.n)};
    get_doubles(is, f.values, "scalar payload");
    return f;
}

OneFormField read_oneform_field(std::istream& is) {
    const FieldHeader h = read_field_header(is);
    if (h.type != FieldType::oneform) throw std::runtime_error("expected a one-form container");
    OneFormField f{TorusGrid(h.n)};
    get_doubles(is, f.a, "one-form dx payload");
    get_doubles(is, f.b, "one-form dy payload");
    return f;
}

VectorField read_vector_field(std::istream& is) {
    const FieldHeader h = read_field_header(is);
    if (h.type != FieldType::vector && h.type != FieldType::displacement)
        throw std::runtime_error("expected a vector container");
    VectorField f{TorusGrid(h.n)};
    get_doubles(is, f.vx, "vector x payload");
    get_doubles(is, f.vy, "vector y payload");
    return f;
}

void write_path(std::ostream& os, const GeneratorPath& gen) {
    os.write(kPathMagic, 4);
    put_u32(os, 0);
    put_u32(os, static_cast<std::uint32_t>(gen.grid.n()));
    put_u32(os, static_cast<std::uint32_t>(gen.tsamples()));
    for (int j = 0; j <= gen.tsamples(); ++j) {
        put_doubles(os, gen.hamiltonian[j].values);
        const double ab[2] = {gen.harmonic[j].x, gen.harmonic[j].y};
        os.write(reinterpret_cast<const char*>(ab), sizeof(ab));
    }
}

void write_path(std::ostream& os, const DiffeoPath& path) {
    os.write(kPathMagic, 4);
    put_u32(os, 1);
    put_u32(os, static_cast<std::uint32_t>(path.grid.n()));
    put_u32(os, static_cast<std::uint32_t>(path.tsamples()));
    for (int j = 0; j <= path.tsamples(); ++j) {
        put_doubles(os, path.displacement[j].vx);
        put_doubles(os, path.displacement[j].vy);
    }
}

PathFile read_path(std::istream& is) {
    expect_magic(is, kPathMagic, "path");
    const std::uint32_t kind = get_u32(is, "path kind");
    const int n = static_cast<int>(get_u32(is, "path resolution"));
    const int T = static_cast<int>(get_u32(is, "path time samples"));
    const TorusGrid grid(n);

    if (kind == 0) {
        GeneratorPath gen(grid, T);
        for (int j = 0; j <= T; ++j) {
            std::ostringstream what;
            what << "generator sample " << j;
            get_doubles(is, gen.hamiltonian[j].values, (what.str() + " scalar block").c_str());
            double ab[2];
            if (!is.read(reinterpret_cast<char*>(ab), sizeof(ab)))
                throw std::runtime_error("truncated file: missing " + what.str() +
                                         " harmonic coefficients");
            gen.harmonic[j] = {ab[0], ab[1]};
        }
        return gen;
    }
    if (kind == 1) {
        DiffeoPath path(grid, T, PathSource::integrated);
        for (int j = 0; j <= T; ++j) {
            std::ostringstream what;
            what << "diffeo sample " << j;
            get_doubles(is, path.displacement[j].vx, (what.str() + " x block").c_str());
            get_doubles(is, path.displacement[j].vy, (what.str() + " y block").c_str());
        }
        return path;
    }
    throw std::runtime_error("unknown path kind in header");
}

void write_path_file(const std::string& filename, const PathFile& path) {
    std::ofstream os(filename, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + filename + " for writing");
    std::visit([&](const auto& p) { write_path(os, p); }, path);
}

PathFile read_path_file(const std::string& filename) {
    std::ifstream is(filename, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + filename);
    return read_path(is);
}

std::string path_to_json(const PathFile& path) {
    nlohmann::json j;
    if (std::holds_alternative<GeneratorPath>(path)) {
        const GeneratorPath& gen = std::get<GeneratorPath>(path);
        j["container"] = "path";
        j["kind"] = "generator";
        j["n"] = gen.grid.n();
        j["tsamples"] = gen.tsamples();
        nlohmann::json samples = nlohmann::json::array();
        for (int s = 0; s <= gen.tsamples(); ++s) {
            const ScalarField& u = gen.hamiltonian[s];
            double lo = u.values[0], hi = u.values[0];
            for (double v : u.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            nlohmann::json row;
            row["u"] = u.values;
            row["u_min"] = lo;
            row["u_max"] = hi;
            row["u_mean"] = u.mean();
            row["harmonic"] = {gen.harmonic[s].x, gen.harmonic[s].y};
            samples.push_back(std::move(row));
        }
        j["samples"] = std::move(samples);
    } else {
        const DiffeoPath& p = std::get<DiffeoPath>(path);
        j["container"] = "path";
        j["kind"] = "diffeo";
        j["n"] = p.grid.n();
        j["tsamples"] = p.tsamples();
        nlohmann::json samples = nlohmann::json::array();
        for (int s = 0; s <= p.tsamples(); ++s) {
            nlohmann::json row;
            row["dx"] = p.displacement[s].vx;
            row["dy"] = p.displacement[s].vy;
            samples.push_back(std::move(row));
        }
        j["samples"] = std::move(samples);
    }
    return j.dump(1);
}

PathFile path_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("container", "") != "path") throw std::runtime_error("not a path JSON document");
    const TorusGrid grid(j.at("n").get<int>());
    const int T = j.at("tsamples").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json& samples = j.at("samples");
    if (static_cast<int>(samples.size()) != T + 1)
        throw std::runtime_error("sample count inconsistent with tsamples");

    if (kind == "generator") {
        GeneratorPath gen(grid, T);
        for (int s = 0; s <= T; ++s) {
            gen.hamiltonian[s].values = samples[s].at("u").get<std::vector<double>>();
            const auto h = samples[s].at("harmonic");
            gen.harmonic[s] = {h.at(0).get<double>(), h.at(1).get<double>()};
        }
        return gen;
    }
    if (kind == "diffeo") {
        DiffeoPath path(grid, T, PathSource::integrated);
        for (int s = 0; s <= T; ++s) {
            path.displacement[s].vx = samples[s].at("dx").get<std::vector<double>>();
            path.displacement[s].vy = samples[s].at("dy").get<std::vector<double>>();
        }
        return path;
    }
    throw std::runtime_error("unknown path kind: " + kind);
}

void append_length_report(const std::string& csv_path, const LengthReport& report) {
    const bool fresh = !std::filesystem::exists(csv_path);
    std::ofstream os(csv_path, std::ios::app);
    if (!os) throw std::runtime_error("cannot open " + csv_path);
    if (fresh) os << "path_id,functional,p,N,T,value\n";
    os.precision(17);
    os << report.path_id << ',' << length_tag(report) << ',';
    if (report.p == kInfinity)
        os << "inf";
    else
        os << report.p;
    os << ',' << report.grid_n << ',' << report.tsamples << ',' << report.value << '\n';
}

}  // namespace hoferlike
