#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gab/ext_linalg.hpp"
#include "gab/field_tower.hpp"
#include "gab/q_cauchy.hpp"

namespace gab::io {

/// Field spec files are `key = value` text with `#` comments. Keys: p, e,
/// base_modulus (F_p labels, little-endian; optional when e = 1), m,
/// ext_modulus (F_q labels, or nested F_p digit lists when e > 1).
std::shared_ptr<const FieldTower> parse_field(std::istream& in);
std::shared_ptr<const FieldTower> load_field(const std::string& path);

/// `0`, or `a^k` with a the tower's primitive element. The parser also takes
/// `1`, `a`, and coefficient lists `[c_0,...,c_{m-1}]` of F_q labels.
std::string format_element(const Element& x);
Element parse_element(const FieldTower& tw, std::string_view text);

std::string format_element_list(std::span<const Element> v);
std::vector<Element> parse_element_list(const FieldTower& tw, std::string_view text);

/// First line `rows cols`, then one whitespace-separated row per line.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const FieldTower& tw, std::istream& in);
Matrix load_matrix(const FieldTower& tw, const std::string& path);

std::string format_base_matrix(const BaseMatrix& b);  // [[...],[...]]
BaseMatrix parse_base_matrix(uint64_t q, std::string_view text);

struct CodeFile {
    std::shared_ptr<const FieldTower> tower;
    std::string field_path;  // resolved path of the referenced field spec
    std::vector<Element> g;
    std::size_t k = 0;
    int64_t s = 1;
};

/// `field = <path>` (resolved relative to the file), `g = [...]`, `k`, `s`.
CodeFile load_code_file(const std::string& path);
std::string format_code_file(const std::string& field_ref, std::span<const Element> g,
                             std::size_t k, int64_t s);

struct ParamsFile {
    std::shared_ptr<const FieldTower> tower;
    std::string field_path;
    QCauchyParams params;
};

/// `field = <path>`, `alpha`, `beta`, `B`, `s`, optional `gamma`.
ParamsFile load_params_file(const std::string& path);
std::string format_params_file(const std::string& field_ref, const QCauchyParams& p);

std::string slurp(const std::string& path);

}  // namespace gab::io
