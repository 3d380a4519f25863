#include "fockcalc/weyl_l2.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace fockcalc {

namespace {

using MonomialMap = std::map<std::pair<int, int>, Scalar>;  // (left_power, right_power)

void add_term(MonomialMap& acc, std::pair<int, int> key, const Scalar& coeff) {
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) acc.erase(it);
    }
}

/// Normal order words in a two-letter algebra with the rewriting rule
/// (right)(left) = (left)(right) + gamma. Letters: false = left generator,
/// true = right generator. Memoized on the letter sequence; termination by
/// the inversion count, which both branches of the rewrite decrease.
class TwoLetterRewriter {
public:
    explicit TwoLetterRewriter(Scalar gamma) : gamma_(std::move(gamma)) {}

    const MonomialMap& normalize(std::vector<bool> word) {
        auto it = memo_.find(word);
        if (it != memo_.end()) return it->second;

        MonomialMap result;
        std::size_t pos = word.size();
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] && !word[i + 1]) {
                pos = i;
                break;
            }
        }
        if (pos == word.size()) {
            int left = static_cast<int>(std::count(word.begin(), word.end(), false));
            int right = static_cast<int>(word.size()) - left;
            result.emplace(std::make_pair(left, right), Scalar(1));
        } else {
            std::vector<bool> swapped = word;
            std::swap(swapped[pos], swapped[pos + 1]);
            std::vector<bool> contracted;
            contracted.reserve(word.size() - 2);
            contracted.insert(contracted.end(), word.begin(), word.begin() + pos);
            contracted.insert(contracted.end(), word.begin() + pos + 2, word.end());
            for (const auto& [key, c] : normalize(std::move(swapped))) add_term(result, key, c);
            for (const auto& [key, c] : normalize(std::move(contracted)))
                add_term(result, key, gamma_ * c);
        }
        return memo_.emplace(std::move(word), std::move(result)).first->second;
    }

private:
    Scalar gamma_;
    std::map<std::vector<bool>, MonomialMap> memo_;
};

/// One substitution factor left*L + right*R.
struct FactorLR {
    Scalar left;
    Scalar right;
};

void expand_product(const std::vector<FactorLR>& factors, const Scalar& prefactor,
                    TwoLetterRewriter& rewriter, MonomialMap& acc) {
    std::size_t n = factors.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Scalar coeff = prefactor;
        std::vector<bool> word(n);
        for (std::size_t k = 0; k < n; ++k) {
            bool right = (mask >> k) & 1u;
            word[k] = right;
            coeff *= right ? factors[k].right : factors[k].left;
        }
        if (coeff.is_zero()) continue;
        for (const auto& [key, c] : rewriter.normalize(std::move(word)))
            add_term(acc, key, coeff * c);
    }
}

}  // namespace

L2Op::L2Op(std::vector<L2Term> terms) : terms_(std::move(terms)) { canonicalize(); }

void L2Op::canonicalize() {
    MonomialMap acc;
    for (auto& t : terms_) {
        if (t.x_power < 0 || t.d_power < 0)
            throw std::invalid_argument("L2Op: negative powers are not allowed");
        add_term(acc, {t.x_power, t.d_power}, t.coeff);
    }
    terms_.clear();
    for (auto& [key, c] : acc) terms_.push_back({key.first, key.second, std::move(c)});
}

int L2Op::order() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.d_power);
    return d;
}

Scalar L2Op::coeff(int x_power, int d_power) const {
    for (const auto& t : terms_)
        if (t.x_power == x_power && t.d_power == d_power) return t.coeff;
    return Scalar(0);
}

L2Op& L2Op::operator+=(const L2Op& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

bool operator==(const L2Op& a, const L2Op& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].x_power != b.terms_[i].x_power) return false;
        if (a.terms_[i].d_power != b.terms_[i].d_power) return false;
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

std::ostream& operator<<(std::ostream& os, const L2Op& op) {
    if (op.is_zero()) return os << "0";
    bool first = true;
    for (const auto& t : op.terms()) {
        if (!first) os << " + ";
        os << "(" << t.coeff << ")";
        if (t.x_power > 0) os << "*x^" << t.x_power;
        if (t.d_power > 0) os << "*D^" << t.d_power;
        first = false;
    }
    return os;
}

L2Op weyl_normal_order(const WeylExpr& expr) {
    // X is the left letter, P the right one; P X = X P + (-i)
    TwoLetterRewriter rewriter(-Scalar::i());
    MonomialMap canonical;
    for (const auto& word : expr) {
        if (word.coeff.is_zero()) continue;
        std::vector<bool> bits(word.letters.size());
        for (std::size_t k = 0; k < word.letters.size(); ++k)
            bits[k] = (word.letters[k] == WeylLetter::P);
        for (const auto& [key, c] : rewriter.normalize(std::move(bits)))
            add_term(canonical, key, word.coeff * c);
    }
    // P^q = (-i)^q D^q
    std::vector<L2Term> terms;
    for (const auto& [key, c] : canonical)
        terms.push_back({key.first, key.second,
                         c * (-Scalar::i()).pow(static_cast<unsigned>(key.second))});
    return L2Op(std::move(terms));
}

L2Op fock_to_lebesgue(const DiffOp& op) {
    // z^j d^p/dz^p -> ((X - iP)/sqrt2)^j ((X + iP)/sqrt2)^p over (X, P)
    TwoLetterRewriter rewriter(-Scalar::i());
    MonomialMap canonical;
    for (int p = 0; p <= op.order(); ++p) {
        const Poly& psi = op.symbol(p);
        for (int j = 0; j <= psi.degree(); ++j) {
            Scalar alpha = psi.coeff(j);
            if (alpha.is_zero()) continue;
            std::vector<FactorLR> factors;
            factors.insert(factors.end(), static_cast<std::size_t>(j),
                           FactorLR{Scalar(1), -Scalar::i()});
            factors.insert(factors.end(), static_cast<std::size_t>(p),
                           FactorLR{Scalar(1), Scalar::i()});
            Scalar prefactor = alpha * Scalar::inv_sqrt2().pow(static_cast<unsigned>(j + p));
            expand_product(factors, prefactor, rewriter, canonical);
        }
    }
    std::vector<L2Term> terms;
    for (const auto& [key, c] : canonical)
        terms.push_back({key.first, key.second,
                         c * (-Scalar::i()).pow(static_cast<unsigned>(key.second))});
    return L2Op(std::move(terms));
}

DiffOp lebesgue_to_fock(const L2Op& l2op) {
    // x^m D^q -> ((Z + Dz)/sqrt2)^m ((Dz - Z)/sqrt2)^q over the Fock
    // generators Z (multiply by z, left letter) and Dz (d/dz, right letter),
    // normal-ordered with Dz Z = Z Dz + 1
    TwoLetterRewriter rewriter(Scalar(1));
    MonomialMap canonical;
    for (const auto& term : l2op.terms()) {
        if (term.coeff.is_zero()) continue;
        std::vector<FactorLR> factors;
        factors.insert(factors.end(), static_cast<std::size_t>(term.x_power),
                       FactorLR{Scalar(1), Scalar(1)});
        factors.insert(factors.end(), static_cast<std::size_t>(term.d_power),
                       FactorLR{Scalar(-1), Scalar(1)});
        Scalar prefactor = term.coeff * Scalar::inv_sqrt2().pow(
                                            static_cast<unsigned>(term.x_power + term.d_power));
        expand_product(factors, prefactor, rewriter, canonical);
    }
    int max_d = 0;
    for (const auto& [key, c] : canonical) max_d = std::max(max_d, key.second);
    std::vector<Poly> symbols(max_d + 1);
    for (const auto& [key, c] : canonical)
        symbols[key.second] += Poly::monomial(static_cast<unsigned>(key.first), c);
    return DiffOp(std::move(symbols));
}

}  // namespace fockcalc
