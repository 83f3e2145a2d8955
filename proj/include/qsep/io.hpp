#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsep/states.hpp"

namespace qsep {

/// One parsed input file. "density" fills state; "vector" fills pure and,
/// when the dims carry a bipartite split, also state (the projector onto the
/// vector, sub-normalized if the vector is).
struct MatrixFile {
    std::string kind;
    std::vector<int> dims;
    std::optional<BipartiteState> state;
    std::optional<PureState> pure;
};

MatrixFile load_matrix(const std::string& path);
std::vector<ComplexVector> load_basis(const std::string& path);
SeparableDecomposition load_decomposition(const std::string& path);

/// Whole file as bytes. Lets a caller parse and digest one read of a stream
/// (pipes and process substitutions cannot be opened twice).
std::string read_text(const std::string& path);
MatrixFile parse_matrix(const std::string& text, const std::string& name);

void save_density(std::ostream& os, const BipartiteState& rho);
void save_density(const std::string& path, const BipartiteState& rho);
void save_vector(std::ostream& os, const PureState& v, const std::vector<int>& dims);
void save_vector(const std::string& path, const PureState& v,
                 const std::vector<int>& dims);
void save_basis(std::ostream& os, const std::vector<ComplexVector>& basis);
void save_basis(const std::string& path, const std::vector<ComplexVector>& basis);
void save_decomposition(std::ostream& os, const SeparableDecomposition& dec);
void save_decomposition(const std::string& path, const SeparableDecomposition& dec);

/// FNV-1a over the raw bytes, hex encoded. Ties a report to its input.
std::string bytes_digest(const std::string& bytes);
std::string file_digest(const std::string& path);

struct VerdictReport {
    std::string tool_version;
    std::string command;
    std::string input_path;
    std::string input_digest;
    bool seed_used = false;
    std::uint64_t seed = 0;
    std::string criterion;
    std::string outcome;
    std::string details;
    std::string certificate;  // summary line; empty when no certificate exists
    std::vector<std::pair<std::string, double>> diagnostics;
};

std::string report_json(const VerdictReport& r);
void write_report(const std::string& path, const VerdictReport& r);
void print_report(std::ostream& os, const VerdictReport& r);

}  // namespace qsep
