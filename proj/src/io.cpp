#include "gab/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace gab::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
    return s;
}

uint64_t parse_uint(std::string_view s, const char* what) {
    s = trim(s);
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && p == s.data() + s.size(), Errc::parse_error,
            std::string("bad integer for ") + what + ": '" + std::string(s) + "'");
    return v;
}

int64_t parse_int(std::string_view s, const char* what) {
    s = trim(s);
    int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && p == s.data() + s.size(), Errc::parse_error,
            std::string("bad integer for ") + what + ": '" + std::string(s) + "'");
    return v;
}

// splits "x, y, z" at top-level commas (one nesting level of brackets)
std::vector<std::string_view> split_top(std::string_view s) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    auto last = trim(s.substr(start));
    if (!last.empty() || !out.empty()) out.push_back(last);
    return out;
}

std::string_view strip_brackets(std::string_view s, const char* what) {
    s = trim(s);
    require(s.size() >= 2 && s.front() == '[' && s.back() == ']', Errc::parse_error,
            std::string(what) + " must be a [...] list");
    return trim(s.substr(1, s.size() - 2));
}

std::map<std::string, std::string> parse_kv(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string_view l = trim(line);
        if (l.empty()) continue;
        auto eq = l.find('=');
        require(eq != std::string_view::npos, Errc::parse_error,
                "expected 'key = value': '" + std::string(l) + "'");
        std::string key(trim(l.substr(0, eq)));
        std::string val(trim(l.substr(eq + 1)));
        require(!key.empty(), Errc::parse_error, "empty key");
        kv[key] = val;
    }
    return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    require(it != kv.end(), Errc::parse_error, "missing key '" + key + "'");
    return it->second;
}

std::vector<uint32_t> parse_label_list(std::string_view s, uint64_t bound, const char* what) {
    std::vector<uint32_t> out;
    for (auto part : split_top(strip_brackets(s, what))) {
        uint64_t v = parse_uint(part, what);
        require(v < bound, Errc::parse_error, std::string(what) + ": entry out of range");
        out.push_back((uint32_t)v);
    }
    return out;
}

}  // namespace

std::shared_ptr<const FieldTower> parse_field(std::istream& in) {
    auto kv = parse_kv(in);
    uint32_t p = (uint32_t)parse_uint(need(kv, "p"), "p");
    uint32_t e = kv.count("e") ? (uint32_t)parse_uint(kv.at("e"), "e") : 1;
    uint32_t m = (uint32_t)parse_uint(need(kv, "m"), "m");
    std::vector<uint32_t> base_mod;
    if (kv.count("base_modulus"))
        base_mod = parse_label_list(kv.at("base_modulus"), p, "base_modulus");
    else {
        require(e == 1, Errc::parse_error, "base_modulus required when e > 1");
        base_mod = {0, 1};
    }
    // ext modulus entries: either F_q labels or nested F_p digit lists
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) q *= p;
    std::vector<uint32_t> ext_mod;
    for (auto part : split_top(strip_brackets(need(kv, "ext_modulus"), "ext_modulus"))) {
        if (!part.empty() && part.front() == '[') {
            auto digs = parse_label_list(part, p, "ext_modulus");
            require(digs.size() <= e, Errc::parse_error, "ext_modulus: digit list longer than e");
            uint64_t label = 0;
            for (std::size_t i = digs.size(); i-- > 0;) label = label * p + digs[i];
            ext_mod.push_back((uint32_t)label);
        } else {
            uint64_t v = parse_uint(part, "ext_modulus");
            require(v < q, Errc::parse_error, "ext_modulus: label out of range");
            ext_mod.push_back((uint32_t)v);
        }
    }
    return std::make_shared<const FieldTower>(p, e, std::move(base_mod), m, std::move(ext_mod));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::shared_ptr<const FieldTower> load_field(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::parse_error, "cannot open field file '" + path + "'");
    return parse_field(in);
}

std::string format_element(const Element& x) {
    if (x.is_zero()) return "0";
    return "a^" + std::to_string(x.tower().dlog(x.code()));
}

Element parse_element(const FieldTower& tw, std::string_view text) {
    text = trim(text);
    require(!text.empty(), Errc::parse_error, "empty element");
    if (text == "0") return tw.zero();
    if (text == "1") return tw.one();
    if (text == "a") return tw.primitive();
    if (text.front() == '[') {
        auto labels = parse_label_list(text, tw.q(), "element");
        require(labels.size() == tw.m(), Errc::parse_error, "element list must have length m");
        return tw.make(tw.from_digits(labels));
    }
    if (text.size() > 2 && text[0] == 'a' && text[1] == '^') {
        uint64_t k = parse_uint(text.substr(2), "exponent");
        return tw.make(tw.exp(k));
    }
    fail(Errc::parse_error, "cannot parse element '" + std::string(text) + "'");
}

std::string format_element_list(std::span<const Element> v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_element(v[i]);
    }
    return out + "]";
}

std::vector<Element> parse_element_list(const FieldTower& tw, std::string_view text) {
    std::vector<Element> out;
    for (auto part : split_top(strip_brackets(text, "element list")))
        out.push_back(parse_element(tw, part));
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += " ";
            out += format_element(m(i, j));
        }
        out += "\n";
    }
    return out;
}

Matrix parse_matrix(const FieldTower& tw, std::istream& in) {
    std::size_t rows = 0, cols = 0;
    in >> rows >> cols;
    require(in.good() && rows > 0 && cols > 0, Errc::parse_error, "bad matrix header");
    Matrix m(tw, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::string tok;
            in >> tok;
            require(!tok.empty() && !in.fail(), Errc::parse_error, "matrix body too short");
            m.set(i, j, parse_element(tw, tok));
        }
    return m;
}

Matrix load_matrix(const FieldTower& tw, const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::parse_error, "cannot open matrix file '" + path + "'");
    return parse_matrix(tw, in);
}

std::string format_base_matrix(const BaseMatrix& b) {
    std::string out = "[";
    for (std::size_t i = 0; i < b.rows(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (j) out += ", ";
            out += std::to_string(b.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

BaseMatrix parse_base_matrix(uint64_t q, std::string_view text) {
    std::vector<std::vector<uint32_t>> rows;
    for (auto part : split_top(strip_brackets(text, "B")))
        rows.push_back(parse_label_list(part, q, "B"));
    return BaseMatrix::from_rows(q, rows);
}

namespace {

std::string resolve_ref(const std::string& owner_path, const std::string& ref) {
    namespace fs = std::filesystem;
    fs::path r(ref);
    if (r.is_absolute() || fs::exists(r)) return ref;
    fs::path sib = fs::path(owner_path).parent_path() / r;
    if (fs::exists(sib)) return sib.string();
    return ref;
}

}  // namespace

CodeFile load_code_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::parse_error, "cannot open code file '" + path + "'");
    auto kv = parse_kv(in);
    CodeFile cf;
    cf.field_path = resolve_ref(path, need(kv, "field"));
    cf.tower = load_field(cf.field_path);
    cf.g = parse_element_list(*cf.tower, need(kv, "g"));
    cf.k = parse_uint(need(kv, "k"), "k");
    cf.s = parse_int(need(kv, "s"), "s");
    return cf;
}

std::string format_code_file(const std::string& field_ref, std::span<const Element> g,
                             std::size_t k, int64_t s) {
    std::string out;
    out += "field = " + field_ref + "\n";
    out += "k = " + std::to_string(k) + "\n";
    out += "s = " + std::to_string(s) + "\n";
    out += "g = " + format_element_list(g) + "\n";
    return out;
}

ParamsFile load_params_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::parse_error, "cannot open params file '" + path + "'");
    auto kv = parse_kv(in);
    std::string field_path = resolve_ref(path, need(kv, "field"));
    auto tower = load_field(field_path);
    const FieldTower& tw = *tower;
    QCauchyParams p{parse_element_list(tw, need(kv, "alpha")),
                    parse_element_list(tw, need(kv, "beta")),
                    parse_base_matrix(tw.q(), need(kv, "B")),
                    parse_int(need(kv, "s"), "s"),
                    kv.count("gamma") ? parse_element(tw, kv.at("gamma"))
                                      : tw.make(tw.default_pi_gamma_code())};
    return ParamsFile{std::move(tower), std::move(field_path), std::move(p)};
}

std::string format_params_file(const std::string& field_ref, const QCauchyParams& p) {
    std::string out;
    out += "field = " + field_ref + "\n";
    out += "s = " + std::to_string(p.s) + "\n";
    out += "gamma = " + format_element(p.gamma) + "\n";
    out += "alpha = " + format_element_list(p.alpha) + "\n";
    out += "beta = " + format_element_list(p.beta) + "\n";
    out += "B = " + format_base_matrix(p.b) + "\n";
    return out;
}

}  // namespace gab::io
