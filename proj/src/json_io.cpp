#include "mapcones/json_io.hpp"

#include <cmath>

namespace mapcones {

json complex_to_json(cplx z) { return json::array({std::real(z), std::imag(z)}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw schema_error("expected a complex number as [re, im], got " + j.dump());
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw schema_error("expected a matrix as nested row-major arrays");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw schema_error("ragged matrix rows in input");
        for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    return m;
}

json superop_to_json(const SuperOp& s, const std::string& rep) {
    json out;
    out["n"] = s.n();
    out["rep"] = rep;
    if (rep == "choi")
        out["data"] = matrix_to_json(s.choi());
    else if (rep == "natural")
        out["data"] = matrix_to_json(s.natural());
    else if (rep == "tensor")
        out["data"] = matrix_to_json(s.tensor());
    else if (rep == "kraus") {
        json list = json::array();
        for (const CMatrix& l : s.kraus()) list.push_back(matrix_to_json(l));
        out["data"] = std::move(list);
    } else
        throw schema_error("superop_to_json: unknown rep '" + rep + "'");
    return out;
}

SuperOp superop_from_json(const json& j) {
    if (!j.is_object()) throw schema_error("expected a map object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw schema_error("map object is missing integer field 'n'");
    if (!j.contains("rep") || !j["rep"].is_string())
        throw schema_error("map object is missing string field 'rep'");
    if (!j.contains("data")) throw schema_error("map object is missing field 'data'");
    const int n = j["n"].get<int>();
    if (n < 1) throw dimension_error("map object: n must be positive");
    const std::string rep = j["rep"].get<std::string>();
    if (rep == "choi") return SuperOp::from_choi(n, matrix_from_json(j["data"]));
    if (rep == "natural") return SuperOp::from_natural(n, matrix_from_json(j["data"]));
    if (rep == "tensor") return SuperOp::from_tensor(n, matrix_from_json(j["data"]));
    if (rep == "kraus") {
        std::vector<CMatrix> ls;
        for (const json& lj : j["data"]) ls.push_back(matrix_from_json(lj));
        return SuperOp::from_kraus(n, ls);
    }
    if (rep == "family") {
        const json& d = j["data"];
        if (!d.is_array() || d.size() != 4)
            throw schema_error("family data must be [alpha, beta, gamma, delta]");
        FamilyParams p{d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
                       d[3].get<double>(), n};
        return p.to_superop();
    }
    throw schema_error("unknown rep '" + rep + "'");
}

GeneratorInput generator_from_json(const json& j) {
    if (!j.is_object()) throw schema_error("expected a generator object");
    GeneratorInput out;
    if (j.contains("kind")) {
        const std::string kind = j["kind"].get<std::string>();
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw schema_error("generator object is missing integer field 'n'");
        const int n = j["n"].get<int>();
        if (kind == "gksl") {
            GKSLData g;
            g.h = matrix_from_json(j.at("H"));
            if (g.h.rows() != n || g.h.cols() != n)
                throw dimension_error("gksl generator: H is not n x n");
            if (j.contains("V"))
                for (const json& vj : j["V"]) g.v.push_back(matrix_from_json(vj));
            out.map = build_gksl(g);
            out.n = n;
            return out;
        }
        if (kind == "dmatrix") {
            DMatrix dm{OrthonormalBasis::standard(n), matrix_from_json(j.at("D")), 0.0};
            if (dm.d.rows() != n * n || dm.d.cols() != n * n)
                throw dimension_error("dmatrix generator: D must be n^2 x n^2");
            dm.kappa = std::real(dm.d(0, 0)) / n;
            out.map = from_dmatrix(dm);
            out.n = n;
            return out;
        }
        throw schema_error("unknown generator kind '" + kind + "'");
    }
    if (j.contains("rep") && j["rep"].is_string() && j["rep"].get<std::string>() == "family") {
        const json& d = j.at("data");
        if (!d.is_array() || d.size() != 4)
            throw schema_error("family data must be [alpha, beta, gamma, delta]");
        const int n = j.at("n").get<int>();
        FamilyParams p{d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
                       d[3].get<double>(), n};
        out.family = p;
        out.map = p.to_superop();
        out.n = n;
        return out;
    }
    out.map = superop_from_json(j);
    out.n = out.map.n();
    return out;
}

json gksl_to_json(int n, const GKSLData& g) {
    json out;
    out["n"] = n;
    out["kind"] = "gksl";
    out["H"] = matrix_to_json(g.h);
    json vs = json::array();
    for (const CMatrix& v : g.v) vs.push_back(matrix_to_json(v));
    out["V"] = std::move(vs);
    return out;
}

IdempotentPair pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("T0") || !j.contains("S"))
        throw schema_error("expected an idempotent pair object {\"T0\": ..., \"S\": ...}");
    IdempotentPair p{superop_from_json(j["T0"]), superop_from_json(j["S"])};
    p.validate();
    return p;
}

json verdict_to_json(const ConeVerdict& v) {
    json out;
    out["cone"] = v.cone;
    if (v.k > 0) out["k"] = v.k;
    out["status"] = to_string(v.status);
    out["margin"] = v.margin;
    if (v.witness) out["witness"] = matrix_to_json(*v.witness);
    return out;
}

json entry_time_to_json(const EntryTimeResult& r) {
    json out;
    out["cone"] = r.cone;
    if (r.status == EntryStatus::Found)
        out["t_star"] = r.t_star;
    else
        out["t_star"] = "never";
    out["method"] = r.method;
    out["bracket"] = json::array({r.bracket_lo, r.bracket_hi});
    out["residual"] = r.residual;
    out["already_member_at_start"] = r.already_member_at_start;
    out["crossings"] = r.crossings;
    if (r.closed_form) out["closed_form"] = *r.closed_form;
    return out;
}

} // namespace mapcones
