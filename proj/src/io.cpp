#include "qsep/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qsep/errors.hpp"

namespace qsep {

using nlohmann::json;

namespace {

json read_json_text(const std::string& text, const std::string& name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(name + ": top level must be an object");
    return j;
}

json read_json(const std::string& path) {
    return read_json_text(read_text(path), path);
}

std::vector<int> read_dims(const json& j, const std::string& path) {
    if (!j.contains("dims") || !j["dims"].is_array())
        throw ParseError(path + ": missing dims array");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw ParseError(path + ": dims entries must be positive integers");
        dims.push_back(d.get<int>());
    }
    return dims;
}

ComplexMatrix read_square(const json& j, const std::string& path, int dim) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != dim ||
        static_cast<int>(im.size()) != dim)
        throw ParseError(path + ": re/im must be " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        const auto& rr = re[r];
        const auto& ri = im[r];
        if (!rr.is_array() || !ri.is_array() || static_cast<int>(rr.size()) != dim ||
            static_cast<int>(ri.size()) != dim)
            throw ParseError(path + ": row " + std::to_string(r) + " must have " +
                             std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c) {
            if (!rr[c].is_number() || !ri[c].is_number())
                throw ParseError(path + ": matrix entries must be numbers");
            m(r, c) = Complex(rr[c].get<double>(), ri[c].get<double>());
        }
    }
    return m;
}

ComplexVector read_flat(const json& re, const json& im, const std::string& path,
                        int dim) {
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != dim ||
        static_cast<int>(im.size()) != dim)
        throw ParseError(path + ": re/im must have " + std::to_string(dim) + " entries");
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) {
        if (!re[i].is_number() || !im[i].is_number())
            throw ParseError(path + ": vector entries must be numbers");
        v[i] = Complex(re[i].get<double>(), im[i].get<double>());
    }
    return v;
}

json matrix_re(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

json matrix_im(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c).imag());
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_part(const ComplexVector& v, bool real) {
    json arr = json::array();
    for (int i = 0; i < v.dim(); ++i) arr.push_back(real ? v[i].real() : v[i].imag());
    return arr;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

}  // namespace

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

MatrixFile parse_matrix(const std::string& text, const std::string& name) {
    const json j = read_json_text(text, name);
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError(name + ": missing kind");
    MatrixFile f;
    f.kind = j["kind"].get<std::string>();
    f.dims = read_dims(j, name);
    const bool normalized = j.value("normalized", true);
    try {
        if (f.kind == "density") {
            if (f.dims.size() != 2)
                throw ParseError(name + ": density needs dims [dA, dB]");
            const int dim = f.dims[0] * f.dims[1];
            f.state = BipartiteState(f.dims[0], f.dims[1], read_square(j, name, dim),
                                     normalized);
        } else if (f.kind == "vector") {
            int dim = 1;
            for (int d : f.dims) dim *= d;
            ComplexVector v = read_flat(j.at("re"), j.at("im"), name, dim);
            f.pure = PureState(v, normalized);
            if (f.dims.size() == 2)
                f.state = BipartiteState(f.dims[0], f.dims[1], outer(v), normalized);
        } else {
            throw ParseError(name + ": unsupported kind '" + f.kind + "'");
        }
    } catch (const json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    return f;
}

MatrixFile load_matrix(const std::string& path) {
    return parse_matrix(read_text(path), path);
}

std::vector<ComplexVector> load_basis(const std::string& path) {
    const json j = read_json(path);
    if (j.value("kind", "") != "basis") throw ParseError(path + ": kind must be basis");
    const std::vector<int> dims = read_dims(j, path);
    if (dims.size() != 1) throw ParseError(path + ": basis needs dims [d]");
    const int d = dims[0];
    try {
        const auto& re = j.at("re");
        const auto& im = j.at("im");
        if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != d ||
            static_cast<int>(im.size()) != d)
            throw ParseError(path + ": basis needs " + std::to_string(d) + " rows");
        std::vector<ComplexVector> basis;
        for (int n = 0; n < d; ++n) basis.push_back(read_flat(re[n], im[n], path, d));
        return basis;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

SeparableDecomposition load_decomposition(const std::string& path) {
    const json j = read_json(path);
    if (j.value("kind", "") != "decomposition")
        throw ParseError(path + ": kind must be decomposition");
    const std::vector<int> dims = read_dims(j, path);
    if (dims.size() != 2) throw ParseError(path + ": decomposition needs dims [dA, dB]");
    try {
        const auto& w = j.at("weights");
        const auto& pre = j.at("psi_re");
        const auto& pim = j.at("psi_im");
        const auto& qre = j.at("phi_re");
        const auto& qim = j.at("phi_im");
        if (!w.is_array()) throw ParseError(path + ": weights must be an array");
        const int k = static_cast<int>(w.size());
        if (static_cast<int>(pre.size()) != k || static_cast<int>(pim.size()) != k ||
            static_cast<int>(qre.size()) != k || static_cast<int>(qim.size()) != k)
            throw ParseError(path + ": factor arrays must match the weight count");
        std::vector<DecompositionTerm> terms;
        for (int t = 0; t < k; ++t) {
            if (!w[t].is_number())
                throw ParseError(path + ": weights must be numbers");
            terms.push_back({w[t].get<double>(),
                             PureState(read_flat(pre[t], pim[t], path, dims[0]), true),
                             PureState(read_flat(qre[t], qim[t], path, dims[1]), true)});
        }
        return SeparableDecomposition(dims[0], dims[1], std::move(terms));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_density(std::ostream& os, const BipartiteState& rho) {
    json j;
    j["kind"] = "density";
    j["dims"] = {rho.dA(), rho.dB()};
    if (!rho.normalized()) j["normalized"] = false;
    j["re"] = matrix_re(rho.matrix());
    j["im"] = matrix_im(rho.matrix());
    os << j.dump(2) << "\n";
}

void save_density(const std::string& path, const BipartiteState& rho) {
    std::ostringstream os;
    save_density(os, rho);
    write_text(path, os.str());
}

void save_vector(std::ostream& os, const PureState& v, const std::vector<int>& dims) {
    json j;
    j["kind"] = "vector";
    j["dims"] = dims;
    if (!v.normalized()) j["normalized"] = false;
    j["re"] = vector_part(v.vector(), true);
    j["im"] = vector_part(v.vector(), false);
    os << j.dump(2) << "\n";
}

void save_vector(const std::string& path, const PureState& v,
                 const std::vector<int>& dims) {
    std::ostringstream os;
    save_vector(os, v, dims);
    write_text(path, os.str());
}

void save_basis(std::ostream& os, const std::vector<ComplexVector>& basis) {
    json j;
    j["kind"] = "basis";
    j["dims"] = {static_cast<int>(basis.size())};
    json re = json::array(), im = json::array();
    for (const auto& v : basis) {
        re.push_back(vector_part(v, true));
        im.push_back(vector_part(v, false));
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    os << j.dump(2) << "\n";
}

void save_basis(const std::string& path, const std::vector<ComplexVector>& basis) {
    std::ostringstream os;
    save_basis(os, basis);
    write_text(path, os.str());
}

void save_decomposition(std::ostream& os, const SeparableDecomposition& dec) {
    json j;
    j["kind"] = "decomposition";
    j["dims"] = {dec.dA(), dec.dB()};
    json w = json::array();
    json pre = json::array(), pim = json::array();
    json qre = json::array(), qim = json::array();
    for (const auto& t : dec.terms()) {
        w.push_back(t.p);
        pre.push_back(vector_part(t.psi.vector(), true));
        pim.push_back(vector_part(t.psi.vector(), false));
        qre.push_back(vector_part(t.phi.vector(), true));
        qim.push_back(vector_part(t.phi.vector(), false));
    }
    j["weights"] = std::move(w);
    j["psi_re"] = std::move(pre);
    j["psi_im"] = std::move(pim);
    j["phi_re"] = std::move(qre);
    j["phi_im"] = std::move(qim);
    os << j.dump(2) << "\n";
}

void save_decomposition(const std::string& path, const SeparableDecomposition& dec) {
    std::ostringstream os;
    save_decomposition(os, dec);
    write_text(path, os.str());
}

std::string bytes_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string file_digest(const std::string& path) {
    return bytes_digest(read_text(path));
}

std::string report_json(const VerdictReport& r) {
    json j;
    j["tool_version"] = r.tool_version;
    j["command"] = r.command;
    if (!r.input_path.empty()) {
        j["input"] = r.input_path;
        j["input_digest"] = r.input_digest;
    }
    if (r.seed_used) j["seed"] = r.seed;
    j["criterion"] = r.criterion;
    j["outcome"] = r.outcome;
    j["details"] = r.details;
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    json diag = json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = v;
    j["diagnostics"] = std::move(diag);
    return j.dump(2) + "\n";
}

void write_report(const std::string& path, const VerdictReport& r) {
    write_text(path, report_json(r));
}

void print_report(std::ostream& os, const VerdictReport& r) {
    os << "criterion   : " << r.criterion << "\n";
    if (!r.input_path.empty())
        os << "input       : " << r.input_path << " (" << r.input_digest << ")\n";
    os << "outcome     : " << r.outcome << "\n";
    if (!r.details.empty()) os << "details     : " << r.details << "\n";
    if (!r.certificate.empty()) os << "certificate : " << r.certificate << "\n";
    for (const auto& [k, v] : r.diagnostics) {
        std::ostringstream val;
        val << std::setprecision(12) << v;
        os << "  " << std::left << std::setw(24) << k << " = " << val.str() << "\n";
    }
    if (r.seed_used) os << "seed        : " << r.seed << "\n";
}

}  // namespace qsep
