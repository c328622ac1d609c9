#include "mouldcalc/json_io.hpp"

#include <nlohmann/json.hpp>

namespace mouldcalc::io {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw SchemaError(where + ": unknown field \"" + key + "\"");
    }
}

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw SchemaError(where + ": rational must be a string");
    return parse_rational(j.get<std::string>());
}

json scalar_to_json(const Scalar& s) { return to_string(s); }

Scalar scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
    if (!j.is_string()) throw SchemaError(where + ": scalar must be a string");
    return parse_scalar(j.get<std::string>());
}

json letters_to_json(const std::vector<Letter>& letters) {
    json arr = json::array();
    for (const auto& l : letters) arr.push_back(l);
    return arr;
}

std::vector<Letter> letters_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": letters must be an array");
    std::vector<Letter> out;
    for (const auto& item : j) {
        if (!item.is_array()) throw SchemaError(where + ": each letter is an integer array");
        Letter l;
        for (const auto& c : item) {
            if (!c.is_number_integer()) throw SchemaError(where + ": letter coordinates");
            l.push_back(c.get<std::int64_t>());
        }
        out.push_back(std::move(l));
    }
    return out;
}

FrequencyModel model_from_json(const json& j, const std::vector<Letter>& letters,
                               int max_word_len, const std::string& where) {
    check_keys(j, {"q", "R"}, where + ".model");
    if (!j.contains("q")) throw SchemaError(where + ": model needs a quotient map q");
    std::vector<IntVec> q;
    for (const auto& row : j.at("q")) {
        IntVec r;
        for (const auto& c : row) r.push_back(c.get<std::int64_t>());
        q.push_back(std::move(r));
    }
    std::int64_t bound = FrequencyModel::auto_range_bound(q, letters, max_word_len);
    if (j.contains("R")) bound = std::max(bound, j.at("R").get<std::int64_t>());
    return FrequencyModel::build(std::move(q), bound);
}

json model_to_json(const FrequencyModel& m) {
    json q = json::array();
    for (const auto& row : m.quotient_map()) q.push_back(row);
    return json{{"d", m.dim()}, {"q", q}, {"R", m.range_bound()}};
}

AlphabetPtr alphabet_from_json(const json& j, int max_word_len, const std::string& where) {
    check_keys(j, {"letters", "eigenvalues", "model"}, where);
    if (!j.contains("letters")) throw SchemaError(where + ": alphabet needs letters");
    std::vector<Letter> letters = letters_from_json(j.at("letters"), where);
    if (j.contains("eigenvalues") == j.contains("model"))
        throw SchemaError(where + ": alphabet needs exactly one of eigenvalues/model");
    if (j.contains("eigenvalues")) {
        std::vector<Scalar> ev;
        for (const auto& e : j.at("eigenvalues")) ev.push_back(scalar_from_json(e, where));
        return Alphabet::with_table(std::move(letters), std::move(ev));
    }
    FrequencyModel model = model_from_json(j.at("model"), letters, max_word_len, where);
    return Alphabet::with_model(std::move(letters), std::move(model));
}

json mould_to_json(const Mould& m) {
    json entries = json::array();
    for (const auto& [w, v] : m.entries()) {
        json word = json::array();
        for (LetterId id : w) word.push_back(id);
        entries.push_back(json{{"word", word}, {"value", scalar_to_json(v)}});
    }
    return json{{"alphabet", letters_to_json(m.alphabet()->letters())},
                {"max_len", m.max_len()},
                {"entries", entries}};
}

Mould mould_from_json(const json& j, const AlphabetPtr& alphabet, const std::string& where) {
    check_keys(j, {"alphabet", "max_len", "entries"}, where);
    if (j.contains("alphabet")) {
        std::vector<Letter> given = letters_from_json(j.at("alphabet"), where);
        if (given != alphabet->letters())
            throw AlphabetMismatch(where + ": mould alphabet differs from the problem's");
    }
    int max_len = j.value("max_len", 0);
    Mould m(alphabet, max_len);
    if (j.contains("entries"))
        for (const auto& e : j.at("entries")) {
            check_keys(e, {"word", "value"}, where + ".entries");
            Word w;
            for (const auto& id : e.at("word")) {
                int v = id.get<int>();
                if (v < 0 || v >= alphabet->size())
                    throw UnknownLetter(where + ": word refers to letter id " +
                                        std::to_string(v));
                w.push_back(static_cast<LetterId>(v));
            }
            if (length(w) > max_len)
                throw SchemaError(where + ": entry longer than max_len");
            m.add(w, scalar_from_json(e.at("value"), where));
        }
    return m;
}

json solution_to_json(const MouldSolution& sol) {
    return json{{"max_len", sol.max_len},
                {"F", mould_to_json(sol.F)},
                {"S", mould_to_json(sol.S)},
                {"G", mould_to_json(sol.G)},
                {"N", mould_to_json(sol.N)},
                {"gauge", mould_to_json(sol.gauge)}};
}

json element_to_json(const engines::PolyVectorField& x) {
    json terms = json::array();
    for (const auto& [key, c] : x.terms())
        terms.push_back(json{{"j", key.first + 1}, {"k", key.second}, {"coeff", scalar_to_json(c)}});
    return json{{"engine", "pd"}, {"N", x.nvars()}, {"terms", terms}};
}

json element_to_json(const engines::PolyHamiltonian& x) {
    json terms = json::array();
    for (const auto& [key, c] : x.terms())
        terms.push_back(json{{"k", key.k}, {"l", key.l}, {"eps", key.eps},
                             {"coeff", scalar_to_json(c)}});
    return json{{"engine", "birkhoff"},
                {"d", x.dof()},
                {"grading", x.grading() == engines::HamGrading::Degree ? "degree" : "eps"},
                {"vars", "zw"},
                {"terms", terms}};
}

json element_to_json(const engines::TrigPoly& x) {
    json terms = json::array();
    for (const auto& [key, c] : x.terms())
        terms.push_back(json{{"comp", key.comp}, {"n", key.n}, {"alpha", key.alpha},
                             {"eps", key.eps}, {"coeff", scalar_to_json(c)}});
    return json{{"engine", "averaging"},
                {"d", x.fast_dims()},
                {"nslow", x.slow_dims()},
                {"hamiltonian", x.hamiltonian()},
                {"terms", terms}};
}

json element_to_json(const engines::MatrixOperator& x) {
    json mats = json::array();
    const int d = x.dim();
    for (const auto& [p, mat] : x.parts()) {
        json rows = json::array();
        for (int r = 0; r < d; ++r) {
            json row = json::array();
            for (int c = 0; c < d; ++c)
                row.push_back(scalar_to_json(mat[static_cast<std::size_t>(r) * d + c]));
            rows.push_back(std::move(row));
        }
        mats.push_back(json{{"eps", p}, {"entries", rows}});
    }
    return json{{"engine", "quantum"},
                {"D", x.dim()},
                {"hbar", rational_to_json(x.hbar())},
                {"matrices", mats}};
}

json element_to_json(const engines::MoyalSymbol& x) {
    json terms = json::array();
    for (const auto& [key, poly] : x.terms()) {
        json hb = json::array();
        for (const auto& [p, c] : poly) hb.push_back(json::array({p, scalar_to_json(c)}));
        terms.push_back(json{{"x", key.x}, {"xi", key.xi}, {"eps", key.eps}, {"hbar", hb}});
    }
    return json{{"engine", "moyal"}, {"d", x.dims()}, {"terms", terms}};
}

engines::PolyVectorField pd_terms_from_json(const json& terms, int nvars,
                                            const std::string& where) {
    engines::PolyVectorField b(nvars);
    for (const auto& t : terms) {
        check_keys(t, {"j", "k", "coeff"}, where + ".terms");
        int j = t.at("j").get<int>();
        if (j < 1 || j > nvars) throw SchemaError(where + ": component index out of range");
        engines::MultiIndex k;
        for (const auto& e : t.at("k")) k.push_back(e.get<std::int32_t>());
        b.add_term(j - 1, std::move(k), scalar_from_json(t.at("coeff"), where));
    }
    return b;
}

engines::PolyHamiltonian birkhoff_terms_from_json(const json& terms, int dof,
                                                  engines::HamGrading grading,
                                                  const std::string& vars,
                                                  const std::string& where) {
    if (vars == "xy") {
        std::vector<std::tuple<engines::MultiIndex, engines::MultiIndex, int, Scalar>> xs;
        for (const auto& t : terms) {
            check_keys(t, {"kx", "ky", "eps", "coeff"}, where + ".terms");
            engines::MultiIndex kx, ky;
            for (const auto& e : t.at("kx")) kx.push_back(e.get<std::int32_t>());
            for (const auto& e : t.at("ky")) ky.push_back(e.get<std::int32_t>());
            xs.emplace_back(std::move(kx), std::move(ky), t.value("eps", 0),
                            scalar_from_json(t.at("coeff"), where));
        }
        return engines::from_xy_terms(dof, grading, xs);
    }
    if (vars != "zw") throw SchemaError(where + ": vars must be \"xy\" or \"zw\"");
    engines::PolyHamiltonian b(dof, grading);
    for (const auto& t : terms) {
        check_keys(t, {"k", "l", "eps", "coeff"}, where + ".terms");
        engines::MultiIndex k, l;
        for (const auto& e : t.at("k")) k.push_back(e.get<std::int32_t>());
        for (const auto& e : t.at("l")) l.push_back(e.get<std::int32_t>());
        b.add_term(std::move(k), std::move(l), t.value("eps", 0),
                   scalar_from_json(t.at("coeff"), where));
    }
    return b;
}

engines::TrigPoly trig_terms_from_json(const json& terms, int d, int nslow, bool hamiltonian,
                                       const std::string& where) {
    engines::TrigPoly b(d, nslow, hamiltonian);
    for (const auto& t : terms) {
        check_keys(t, {"comp", "n", "alpha", "eps", "coeff"}, where + ".terms");
        int comp = hamiltonian ? -1 : t.at("comp").get<int>();
        IntVec n;
        for (const auto& e : t.at("n")) n.push_back(e.get<std::int64_t>());
        engines::MultiIndex alpha(nslow, 0);
        if (t.contains("alpha")) {
            alpha.clear();
            for (const auto& e : t.at("alpha")) alpha.push_back(e.get<std::int32_t>());
        }
        b.add_term(comp, std::move(n), std::move(alpha), t.value("eps", 0),
                   scalar_from_json(t.at("coeff"), where));
    }
    return b;
}

engines::MatrixOperator matrices_from_json(const json& j, int dim, const Rational& hbar,
                                           const std::string& where) {
    engines::MatrixOperator b(dim, hbar);
    for (const auto& m : j) {
        check_keys(m, {"eps", "entries"}, where + ".matrices");
        int eps = m.at("eps").get<int>();
        const json& rows = m.at("entries");
        if (static_cast<int>(rows.size()) != dim)
            throw SchemaError(where + ": matrix has wrong number of rows");
        std::vector<Scalar> mat;
        mat.reserve(static_cast<std::size_t>(dim) * dim);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != dim)
                throw SchemaError(where + ": matrix has wrong number of columns");
            for (const auto& e : row) mat.push_back(scalar_from_json(e, where));
        }
        b.set_part(eps, std::move(mat));
    }
    return b;
}

engines::MoyalSymbol symbol_terms_from_json(const json& terms, int d, const std::string& where) {
    engines::MoyalSymbol b(d, false);
    for (const auto& t : terms) {
        check_keys(t, {"x", "xi", "eps", "coeff"}, where + ".terms");
        engines::MultiIndex x, xi;
        for (const auto& e : t.at("x")) x.push_back(e.get<std::int32_t>());
        for (const auto& e : t.at("xi")) xi.push_back(e.get<std::int32_t>());
        b.add_term(std::move(x), std::move(xi), t.value("eps", 0),
                   scalar_from_json(t.at("coeff"), where));
    }
    return b;
}

} // namespace mouldcalc::io
