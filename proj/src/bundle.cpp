#include "homext/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace homext {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + ": missing \"" + key + "\"");
    return *it;
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) fail(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(where + ": unknown key \"" + it.key() + "\"");
}

std::uint64_t read_uint(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        fail(where + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

Scalar read_scalar(const json& v, std::uint32_t p, const std::string& where) {
    std::uint64_t x = read_uint(v, where);
    if (x >= p) fail(where + ": value " + std::to_string(x) + " outside [0, p)");
    return static_cast<Scalar>(x);
}

std::size_t read_index(const json& v, std::size_t n, const std::string& where) {
    std::uint64_t x = read_uint(v, where);
    if (x >= n) fail(where + ": index " + std::to_string(x) + " outside [0, dim)");
    return static_cast<std::size_t>(x);
}

Vec read_vec(const json& v, std::uint32_t p, std::size_t n, const std::string& where) {
    if (!v.is_array() || v.size() != n) fail(where + ": expected an array of " + std::to_string(n) + " integers");
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = read_scalar(v[i], p, where);
    return out;
}

Mat read_mat(const json& v, std::uint32_t p, std::size_t n, const std::string& where) {
    if (!v.is_array() || v.size() != n) fail(where + ": expected " + std::to_string(n) + " rows");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(read_vec(v[i], p, n, where));
    return Mat::from_rows(n, rows);
}

ojson vec_json(const Vec& v) {
    ojson a = ojson::array();
    for (Scalar x : v) a.push_back(x);
    return a;
}

ojson mat_json(const Mat& M) {
    ojson a = ojson::array();
    for (std::size_t i = 0; i < M.rows(); ++i) a.push_back(vec_json(M.row(i)));
    return a;
}

bool flat(const ojson& j) {
    if (j.is_array() || j.is_object()) {
        for (const auto& v : j)
            if ((v.is_array() || v.is_object()) && !v.empty()) return false;
    }
    return true;
}

void emit(const ojson& j, std::string& out, int indent) {
    if (!j.is_array() && !j.is_object()) {
        out += j.dump();
        return;
    }
    const bool obj = j.is_object();
    if (j.empty()) {
        out += obj ? "{}" : "[]";
        return;
    }
    const char open = obj ? '{' : '[', close = obj ? '}' : ']';
    if (flat(j)) {
        out += open;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ", ";
            first = false;
            if (obj) out += ojson(it.key()).dump() + ": ";
            out += it->dump();
        }
        out += close;
        return;
    }
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    out += open;
    out += '\n';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        if (obj) out += ojson(it.key()).dump() + ": ";
        emit(*it, out, indent + 2);
    }
    out += '\n';
    out += std::string(static_cast<std::size_t>(indent), ' ');
    out += close;
}

} // namespace

std::string emit_canonical(const ojson& j) {
    std::string out;
    emit(j, out, 0);
    out += '\n';
    return out;
}

const Derivation* Bundle::find_derivation(const std::string& name) const {
    for (const auto& [k, d] : derivations)
        if (k == name) return &d;
    return nullptr;
}

Bundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    only_keys(j, {"version", "p", "dim", "basis", "brackets", "alpha", "form", "pmap", "derivations", "extension"},
              "bundle");
    const json& ver = field(j, "version", "bundle");
    if (!ver.is_string() || ver.get<std::string>() != kBundleVersion)
        fail(std::string("bundle: unsupported version (expected \"") + kBundleVersion + "\")");

    std::uint64_t p64 = read_uint(field(j, "p", "bundle"), "p");
    if (p64 >= (1u << 16) || !is_prime(static_cast<std::uint32_t>(p64))) fail("p: not a prime below 65536");
    const auto p = static_cast<std::uint32_t>(p64);
    PrimeField F(p);
    const std::size_t n = read_uint(field(j, "dim", "bundle"), "dim");
    if (n == 0) fail("dim: must be positive");

    const json& jb = field(j, "basis", "bundle");
    if (!jb.is_array() || jb.size() != n) fail("basis: expected " + std::to_string(n) + " names");
    std::vector<std::string> names;
    for (const auto& s : jb) {
        if (!s.is_string()) fail("basis: names must be strings");
        names.push_back(s.get<std::string>());
    }

    const json& jbr = field(j, "brackets", "bundle");
    if (!jbr.is_array()) fail("brackets: expected an array");
    std::vector<Scalar> upper(n * (n - 1) / 2 * n, 0);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (const auto& e : jbr) {
        only_keys(e, {"i", "j", "k", "coeff"}, "brackets entry");
        std::size_t i = read_index(field(e, "i", "brackets entry"), n, "brackets.i");
        std::size_t jj = read_index(field(e, "j", "brackets entry"), n, "brackets.j");
        std::size_t k = read_index(field(e, "k", "brackets entry"), n, "brackets.k");
        Scalar c = read_scalar(field(e, "coeff", "brackets entry"), p, "brackets.coeff");
        if (i >= jj) fail("brackets: entries need i < j");
        if (!seen.insert({i, jj, k}).second) fail("brackets: duplicate entry");
        upper[HomLieAlgebra::pair_index(n, i, jj) * n + k] = c;
    }

    Mat alpha = read_mat(field(j, "alpha", "bundle"), p, n, "alpha");
    Bundle b{HomLieAlgebra(F, n, std::move(upper), std::move(alpha), std::move(names)), {}, {}, {}, {}};

    if (j.contains("form")) b.form = BilinearForm{read_mat(j["form"], p, n, "form")};
    if (j.contains("pmap")) {
        const json& jp = j["pmap"];
        if (!jp.is_array() || jp.size() != n) fail("pmap: expected " + std::to_string(n) + " images");
        PStructure P;
        for (const auto& v : jp) P.images.push_back(read_vec(v, p, n, "pmap"));
        b.pmap = std::move(P);
    }
    if (j.contains("derivations")) {
        const json& jd = j["derivations"];
        if (!jd.is_object()) fail("derivations: expected an object");
        for (auto it = jd.begin(); it != jd.end(); ++it) {
            const std::string where = "derivations." + it.key();
            only_keys(*it, {"degree", "matrix"}, where);
            Derivation D;
            D.degree = static_cast<unsigned>(read_uint(field(*it, "degree", where), where + ".degree"));
            D.mat = read_mat(field(*it, "matrix", where), p, n, where + ".matrix");
            b.derivations.emplace_back(it.key(), std::move(D));
        }
    }
    if (j.contains("extension")) {
        const json& je = j["extension"];
        only_keys(je, {"derivation", "x0", "lambda", "lambda0", "estar_norm", "xi", "a0", "m", "l", "u0", "P_basis"},
                  "extension");
        ExtensionBlock x;
        const json& jn = field(je, "derivation", "extension");
        if (!jn.is_string()) fail("extension.derivation: expected a name");
        x.derivation = jn.get<std::string>();
        if (!b.find_derivation(x.derivation)) fail("extension.derivation: no derivation named " + x.derivation);
        x.x0 = read_vec(field(je, "x0", "extension"), p, n, "extension.x0");
        x.lambda = read_scalar(field(je, "lambda", "extension"), p, "extension.lambda");
        x.lambda0 = read_scalar(field(je, "lambda0", "extension"), p, "extension.lambda0");
        x.estar_norm = read_scalar(field(je, "estar_norm", "extension"), p, "extension.estar_norm");
        const char* pkeys[] = {"xi", "a0", "m", "l", "u0", "P_basis"};
        std::size_t present = 0;
        for (const char* k : pkeys) present += je.contains(k) ? 1 : 0;
        if (present != 0 && present != 6) fail("extension: p-extension fields must be given together");
        if (present == 6) {
            PExtensionData pe;
            pe.xi = read_scalar(je["xi"], p, "extension.xi");
            pe.a0 = read_vec(je["a0"], p, n, "extension.a0");
            pe.m = read_scalar(je["m"], p, "extension.m");
            pe.l = read_scalar(je["l"], p, "extension.l");
            pe.u0 = read_vec(je["u0"], p, n, "extension.u0");
            pe.P_basis = read_vec(je["P_basis"], p, n, "extension.P_basis");
            x.pdata = std::move(pe);
        }
        b.extension = std::move(x);
    }
    return b;
}

std::string emit_bundle(const Bundle& b) {
    const HomLieAlgebra& A = b.algebra;
    const std::size_t n = A.dim();
    ojson j;
    j["version"] = kBundleVersion;
    j["p"] = A.p();
    j["dim"] = n;
    ojson names = ojson::array();
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(i < A.basis_names().size() ? A.basis_names()[i] : "e" + std::to_string(i + 1));
    j["basis"] = names;
    ojson br = ojson::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = i + 1; jj < n; ++jj)
            for (std::size_t k = 0; k < n; ++k) {
                Scalar c = A.structure(i, jj, k);
                if (c != 0) br.push_back(ojson{{"i", i}, {"j", jj}, {"k", k}, {"coeff", c}});
            }
    j["brackets"] = br;
    j["alpha"] = mat_json(A.alpha());
    if (b.form) j["form"] = mat_json(b.form->gram);
    if (b.pmap) {
        ojson pm = ojson::array();
        for (const Vec& v : b.pmap->images) pm.push_back(vec_json(v));
        j["pmap"] = pm;
    }
    std::map<std::string, const Derivation*> sorted;
    for (const auto& [k, d] : b.derivations) sorted[k] = &d;
    ojson ders = ojson::object();
    for (const auto& [k, d] : sorted) {
        ojson dj;
        dj["degree"] = d->degree;
        dj["matrix"] = mat_json(d->mat);
        ders[k] = dj;
    }
    j["derivations"] = ders;
    if (b.extension) {
        const ExtensionBlock& x = *b.extension;
        ojson e;
        e["derivation"] = x.derivation;
        e["x0"] = vec_json(x.x0);
        e["lambda"] = x.lambda;
        e["lambda0"] = x.lambda0;
        e["estar_norm"] = x.estar_norm;
        if (x.pdata) {
            e["xi"] = x.pdata->xi;
            e["a0"] = vec_json(x.pdata->a0);
            e["m"] = x.pdata->m;
            e["l"] = x.pdata->l;
            e["u0"] = vec_json(x.pdata->u0);
            e["P_basis"] = vec_json(x.pdata->P_basis);
        }
        j["extension"] = e;
    }
    return emit_canonical(j);
}

Bundle read_bundle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bundle(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) fail("cannot write " + path);
}

DoubleExtensionData extension_data(const Bundle& b) {
    if (!b.extension) throw Error(ErrorCode::PreconditionFailed, "bundle has no extension block");
    const ExtensionBlock& x = *b.extension;
    DoubleExtensionData d;
    d.D = *b.find_derivation(x.derivation);
    d.x0 = x.x0;
    d.lambda = x.lambda;
    d.lambda0 = x.lambda0;
    d.estar_norm = x.estar_norm;
    return d;
}

std::string emit_report(const Report& r) {
    ojson checks = ojson::array();
    std::size_t passed = 0;
    for (const Check& c : r.checks()) {
        ojson cj;
        cj["name"] = c.name;
        cj["status"] = c.passed() ? "pass" : "fail";
        cj["evaluated"] = c.evaluated;
        cj["failed"] = c.failed;
        ojson ws = ojson::array();
        for (const Failure& f : c.witnesses) {
            ojson w;
            w["tuple"] = f.tuple;
            ojson in = ojson::array();
            for (const Vec& v : f.inputs) in.push_back(vec_json(v));
            w["inputs"] = in;
            w["lhs"] = vec_json(f.lhs);
            w["rhs"] = vec_json(f.rhs);
            ws.push_back(w);
        }
        cj["witnesses"] = ws;
        checks.push_back(cj);
        if (c.passed()) ++passed;
    }
    ojson j;
    j["checks"] = checks;
    ojson params = ojson::object();
    for (const auto& [k, v] : r.params()) params[k] = v;
    j["params"] = params;
    j["summary"] = ojson{{"passed", passed}, {"failed", r.checks().size() - passed}};
    return emit_canonical(j);
}

} // namespace homext
