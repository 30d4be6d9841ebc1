#include "spincover/json_io.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace spincover {

using nlohmann::json;

namespace {

int get_count(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw InputError(std::string("expected integer field \"") + key + "\"");
    return j[key].get<int>();
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw InputError(std::string("expected numeric field \"") + key + "\"");
    return j[key].get<double>();
}

Signature signature_from_json(const json& j, Field fallback_field) {
    const int p = get_count(j, "p");
    const int q = get_count(j, "q");
    Field field = fallback_field;
    if (j.contains("field")) {
        const std::string f = j["field"].get<std::string>();
        if (f == "real") field = Field::real;
        else if (f == "complex") field = Field::complex;
        else throw InputError("field must be \"real\" or \"complex\"");
    }
    return Signature(p, q, field);
}

}  // namespace

json multivector_to_json(const Multivector& u) {
    json terms = json::array();
    for (const auto& t : u.terms()) {
        json indices = json::array();
        for (BladeMask m = t.mask; m != 0; m &= m - 1)
            indices.push_back(std::countr_zero(m) + 1);
        json term{{"index", std::move(indices)}, {"re", t.c.real()}};
        if (u.sig().field() == Field::complex) term["im"] = t.c.imag();
        terms.push_back(std::move(term));
    }
    return json{{"p", u.sig().p()},
                {"q", u.sig().q()},
                {"field", u.sig().field() == Field::real ? "real" : "complex"},
                {"terms", std::move(terms)}};
}

Multivector multivector_from_json(const json& j) {
    if (!j.is_object()) throw InputError("multivector document must be a JSON object");
    const Signature sig = signature_from_json(j, Field::real);
    if (!j.contains("terms") || !j["terms"].is_array())
        throw InputError("multivector needs a \"terms\" array");

    std::vector<Multivector::Term> terms;
    std::vector<BladeMask> seen;
    for (const json& term : j["terms"]) {
        if (!term.contains("index") || !term["index"].is_array())
            throw InputError("term needs an \"index\" array");
        BladeMask mask = 0;
        int prev = 0;
        for (const json& idx : term["index"]) {
            if (!idx.is_number_integer()) throw InputError("indices must be integers");
            const int a = idx.get<int>();
            if (a < 1 || a > sig.n()) throw InputError("index out of range for the signature");
            if (a <= prev) throw InputError("indices must be strictly increasing");
            prev = a;
            mask |= BladeMask{1} << (a - 1);
        }
        const double re = get_number(term, "re");
        double im = 0.0;
        if (term.contains("im")) im = get_number(term, "im");
        if (sig.field() == Field::real && im != 0.0)
            throw InputError("real multivector has a nonzero imaginary part");
        seen.push_back(mask);
        terms.push_back({mask, Coeff{re, im}});
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw InputError("duplicate blade in term list");
    return Multivector::from_terms(sig, std::move(terms));
}

json orthogonal_to_json(const OrthogonalMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.sig().n(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.sig().n(); ++c) row.push_back(m.entries()(r, c));
        rows.push_back(std::move(row));
    }
    return json{{"p", m.sig().p()}, {"q", m.sig().q()}, {"matrix", std::move(rows)}};
}

OrthogonalMatrix orthogonal_from_json(const json& j, double tol) {
    if (!j.is_object()) throw InputError("matrix document must be a JSON object");
    const Signature sig = signature_from_json(j, Field::real);
    if (sig.field() != Field::real) throw InputError("orthogonal matrices are real");
    if (!j.contains("matrix") || !j["matrix"].is_array())
        throw InputError("matrix document needs a \"matrix\" array");
    const auto& rows = j["matrix"];
    if (static_cast<int>(rows.size()) != sig.n())
        throw InputError("matrix must have exactly n rows");
    Eigen::MatrixXd m(sig.n(), sig.n());
    for (int r = 0; r < sig.n(); ++r) {
        if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != sig.n())
            throw InputError("matrix rows must have exactly n entries");
        for (int c = 0; c < sig.n(); ++c) {
            if (!rows[r][c].is_number()) throw InputError("matrix entries must be numbers");
            m(r, c) = rows[r][c].get<double>();
        }
    }
    return OrthogonalMatrix(sig, std::move(m), tol);
}

json dense_to_json(const DenseMatrix& m, bool complex_entries) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            json cell{{"re", m(r, c).real()}};
            if (complex_entries) cell["im"] = m(r, c).imag();
            row.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    return json{{"order", m.rows()}, {"complex", complex_entries}, {"rows", std::move(rows)}};
}

DenseMatrix dense_from_json(const json& j) {
    if (!j.is_object()) throw InputError("dense matrix document must be a JSON object");
    const int order = get_count(j, "order");
    if (order < 1) throw InputError("order must be positive");
    const bool complex_entries = j.contains("complex") && j["complex"].is_boolean()
                                     ? j["complex"].get<bool>()
                                     : true;
    if (!j.contains("rows") || !j["rows"].is_array() ||
        static_cast<int>(j["rows"].size()) != order)
        throw InputError("dense matrix needs \"rows\" with exactly `order` rows");
    DenseMatrix m(order, order);
    for (int r = 0; r < order; ++r) {
        const auto& row = j["rows"][r];
        if (!row.is_array() || static_cast<int>(row.size()) != order)
            throw InputError("dense matrix rows must have exactly `order` cells");
        for (int c = 0; c < order; ++c) {
            const double re = get_number(row[c], "re");
            const double im = row[c].contains("im") ? get_number(row[c], "im") : 0.0;
            if (!complex_entries && im != 0.0)
                throw InputError("real dense matrix has a nonzero imaginary part");
            m(r, c) = Coeff{re, im};
        }
    }
    return m;
}

json lift_result_to_json(const LiftResult& r) {
    json groups = json::array();
    for (SpinGroup g : r.groups.groups) groups.push_back(to_string(g));
    return json{{"T_plus", multivector_to_json(r.T_plus)},
                {"norm_type", to_string(r.norm_type)},
                {"groups", std::move(groups)},
                {"component", to_string(r.groups.component)},
                {"matrix_component", to_string(r.component)},
                {"residual", r.residual}};
}

}  // namespace spincover
