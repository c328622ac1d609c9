#include "mouldcalc/alphabet.hpp"

#include <algorithm>
#include <sstream>

namespace mouldcalc {

std::string to_string(const Word& w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << w[i];
    }
    os << ")";
    return os.str();
}

namespace {

void sort_letters(std::vector<Letter>& letters, std::vector<Scalar>* values) {
    if (letters.empty()) return;
    for (const auto& l : letters)
        if (l.size() != letters.front().size())
            throw SchemaError("letters of one alphabet must share a dimension");
    std::vector<std::size_t> idx(letters.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return letters[a] < letters[b]; });
    std::vector<Letter> ls;
    std::vector<Scalar> vs;
    ls.reserve(letters.size());
    for (std::size_t i : idx) {
        ls.push_back(letters[i]);
        if (values) vs.push_back((*values)[i]);
    }
    for (std::size_t i = 1; i < ls.size(); ++i)
        if (ls[i] == ls[i - 1]) throw SchemaError("duplicate letter in alphabet");
    letters = std::move(ls);
    if (values) *values = std::move(vs);
}

} // namespace

std::shared_ptr<const Alphabet> Alphabet::with_table(std::vector<Letter> letters,
                                                     std::vector<Scalar> eigenvalues) {
    if (letters.size() != eigenvalues.size())
        throw SchemaError("one eigenvalue per letter required");
    auto a = std::shared_ptr<Alphabet>(new Alphabet());
    sort_letters(letters, &eigenvalues);
    a->letters_ = std::move(letters);
    a->lambda_ = std::move(eigenvalues);
    return a;
}

std::shared_ptr<const Alphabet> Alphabet::with_model(std::vector<Letter> letters,
                                                     FrequencyModel model) {
    auto a = std::shared_ptr<Alphabet>(new Alphabet());
    sort_letters(letters, nullptr);
    a->letters_ = std::move(letters);
    a->lambda_.reserve(a->letters_.size());
    for (const auto& l : a->letters_) a->lambda_.push_back(model.eigenvalue(l));
    a->model_ = std::move(model);
    return a;
}

std::shared_ptr<const Alphabet> Alphabet::empty() {
    return std::shared_ptr<Alphabet>(new Alphabet());
}

std::optional<LetterId> Alphabet::find(const Letter& l) const {
    auto it = std::lower_bound(letters_.begin(), letters_.end(), l);
    if (it == letters_.end() || *it != l) return std::nullopt;
    return static_cast<LetterId>(it - letters_.begin());
}

LetterId Alphabet::require(const Letter& l) const {
    auto id = find(l);
    if (!id) {
        std::ostringstream os;
        os << "letter (";
        for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
        os << ") not in alphabet";
        throw UnknownLetter(os.str());
    }
    return *id;
}

std::optional<LetterId> Alphabet::negation(LetterId id) const {
    if (model_) {
        Letter neg = letters_.at(id);
        for (auto& c : neg) c = -c;
        return find(neg);
    }
    Scalar want = -lambda_.at(id);
    for (LetterId j = 0; j < size(); ++j)
        if (lambda_[j] == want) return j;
    return std::nullopt;
}

const FrequencyModel& Alphabet::model() const {
    if (!model_) throw SchemaError("alphabet has no frequency model");
    return *model_;
}

bool Alphabet::word_resonant(const Word& w) const {
    if (model_) {
        if (w.empty()) return true;
        Letter sum(letters_.at(w.front()).size(), 0);
        for (LetterId id : w) {
            const Letter& l = letters_.at(id);
            for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += l[c];
        }
        return model_->is_resonant(sum);
    }
    return lambda(w).is_zero();
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b))
        throw AlphabetMismatch("operands live over different alphabets");
}

} // namespace mouldcalc
