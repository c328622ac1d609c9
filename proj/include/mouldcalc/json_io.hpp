#ifndef MOULDCALC_JSON_IO_HPP
#define MOULDCALC_JSON_IO_HPP

#include <nlohmann/json_fwd.hpp>

#include "mouldcalc/engines/hamiltonian.hpp"
#include "mouldcalc/engines/matrix_op.hpp"
#include "mouldcalc/engines/moyal.hpp"
#include "mouldcalc/engines/trig_field.hpp"
#include "mouldcalc/engines/vector_field.hpp"
#include "mouldcalc/solver.hpp"

namespace mouldcalc::io {

using json = nlohmann::json;

// Rejects objects with keys outside `allowed` (spec'd schema hygiene).
void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where);

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& where);
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, const std::string& where);

json letters_to_json(const std::vector<Letter>& letters);
std::vector<Letter> letters_from_json(const json& j, const std::string& where);

FrequencyModel model_from_json(const json& j, const std::vector<Letter>& letters,
                               int max_word_len, const std::string& where);
json model_to_json(const FrequencyModel& m);

// {letters, eigenvalues | model} — max_word_len feeds the automatic range
// bound when the model omits R.
AlphabetPtr alphabet_from_json(const json& j, int max_word_len, const std::string& where);

// Spec format: {alphabet: [...letters...], max_len, entries:[{word, value}]}.
json mould_to_json(const Mould& m);
Mould mould_from_json(const json& j, const AlphabetPtr& alphabet, const std::string& where);

json solution_to_json(const MouldSolution& sol);

// Engine elements.
json element_to_json(const engines::PolyVectorField& x);
json element_to_json(const engines::PolyHamiltonian& x);
json element_to_json(const engines::TrigPoly& x);
json element_to_json(const engines::MatrixOperator& x);
json element_to_json(const engines::MoyalSymbol& x);

engines::PolyVectorField pd_terms_from_json(const json& terms, int nvars,
                                            const std::string& where);
engines::PolyHamiltonian birkhoff_terms_from_json(const json& j, int dof,
                                                  engines::HamGrading grading,
                                                  const std::string& vars,
                                                  const std::string& where);
engines::TrigPoly trig_terms_from_json(const json& terms, int d, int nslow, bool hamiltonian,
                                       const std::string& where);
engines::MatrixOperator matrices_from_json(const json& j, int dim, const Rational& hbar,
                                           const std::string& where);
engines::MoyalSymbol symbol_terms_from_json(const json& terms, int d, const std::string& where);

} // namespace mouldcalc::io

#endif
