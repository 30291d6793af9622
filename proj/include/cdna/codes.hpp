#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cdna/core.hpp"

namespace cdna {

// ---------------------------------------------------------------------------
// lexicographic codebooks defined by a finite-state constraint

/// A codebook over [0, M]^n whose membership is decided by a left-to-right
/// automaton. Suffix completion counts give exact size, rank and unrank in
/// lexicographic order without listing the code.
///
/// Constraint must provide:
///   std::size_t states() const;
///   std::size_t initial() const;
///   std::optional<std::size_t> step(std::size_t state, std::size_t pos, Level value) const;
///   bool accepts(std::size_t state) const;
template <typename Constraint>
class LexCodebook {
public:
    LexCodebook(Level M, std::size_t n, Constraint constraint)
        : M_(M), n_(n), constraint_(std::move(constraint)),
          completions_(n + 1, std::vector<BigInt>(constraint_.states(), 0)) {
        for (std::size_t s = 0; s < constraint_.states(); ++s) completions_[n][s] = constraint_.accepts(s) ? 1 : 0;
        for (std::size_t pos = n; pos-- > 0;)
            for (std::size_t s = 0; s < constraint_.states(); ++s)
                for (Level v = 0; v <= M; ++v)
                    if (auto next = constraint_.step(s, pos, v)) completions_[pos][s] += completions_[pos + 1][*next];
    }

    const BigInt& size() const noexcept { return completions_[0][constraint_.initial()]; }

    CompositeVector unrank(BigInt rank) const {
        if (rank < 0 || rank >= size()) throw EncodeError("message rank outside [0, code size)");
        std::vector<Level> out(n_);
        std::size_t state = constraint_.initial();
        for (std::size_t pos = 0; pos < n_; ++pos) {
            for (Level v = 0; v <= M_; ++v) {
                auto next = constraint_.step(state, pos, v);
                if (!next) continue;
                const BigInt& block = completions_[pos + 1][*next];
                if (rank < block) {
                    out[pos] = v;
                    state = *next;
                    break;
                }
                rank -= block;
            }
        }
        return CompositeVector(M_, std::move(out));
    }

    BigInt rank(const CompositeVector& x) const {
        if (x.strands() != M_ || x.length() != n_) throw ShapeError("vector does not match codebook dimensions");
        BigInt r = 0;
        std::size_t state = constraint_.initial();
        for (std::size_t pos = 0; pos < n_; ++pos) {
            for (Level v = 0; v < x[pos]; ++v)
                if (auto next = constraint_.step(state, pos, v)) r += completions_[pos + 1][*next];
            auto next = constraint_.step(state, pos, x[pos]);
            if (!next) throw DomainError("vector is not a codeword");
            state = *next;
        }
        if (!constraint_.accepts(state)) throw DomainError("vector is not a codeword");
        return r;
    }

private:
    Level M_;
    std::size_t n_;
    Constraint constraint_;
    std::vector<std::vector<BigInt>> completions_;
};

// ---------------------------------------------------------------------------
// strand-loss code: every entry a multiple of t+1

struct StrandLossCode {
    Level M;
    std::size_t n;
    Level t;

    StrandLossCode(Level M_, std::size_t n_, Level t_) : M(M_), n(n_), t(t_) {
        if (n < 1) throw ConfigError("strand-loss code needs n >= 1");
        if (t < 1 || t >= M) throw ConfigError("strand-loss code needs 1 <= t < M");
    }

    /// Levels per coordinate: ceil((M+1)/(t+1)).
    Level radix() const noexcept { return M / (t + 1) + 1; }
};

inline bool sl_contains(const StrandLossCode& code, const CompositeVector& x) {
    if (x.strands() != code.M || x.length() != code.n) throw ShapeError("vector does not match code dimensions");
    for (Level v : x.entries())
        if (v % (code.t + 1) != 0) return false;
    return true;
}

inline BigInt sl_code_size(const StrandLossCode& code) { return power(code.radix(), code.n); }

inline CompositeVector sl_encode(const StrandLossCode& code, std::span<const Level> digits) {
    if (digits.size() != code.n) throw EncodeError("message must have n digits");
    std::vector<Level> c(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        if (digits[j] >= code.radix()) throw EncodeError("message digit out of range");
        c[j] = digits[j] * (code.t + 1);
    }
    return CompositeVector(code.M, std::move(c));
}

inline std::vector<Level> sl_message(const StrandLossCode& code, const CompositeVector& c) {
    if (!sl_contains(code, c)) throw DomainError("vector is not a strand-loss codeword");
    std::vector<Level> digits(code.n);
    for (std::size_t j = 0; j < code.n; ++j) digits[j] = c[j] / (code.t + 1);
    return digits;
}

namespace detail {

inline std::vector<Level> received_counts(const ChannelOutput& R, Level M, Level t, std::size_t n) {
    if (R.row_count() > M) throw DecodeFailure(DecodeFailureReason::extra_rows, "more rows than strands");
    if (R.row_count() + t < M) throw DecodeFailure(DecodeFailureReason::missing_rows, "more than t strands lost");
    for (const Row& r : R.rows())
        if (r.size() != n) throw DecodeFailure(DecodeFailureReason::row_length, "received row has wrong length");
    if (R.row_count() == 0) return std::vector<Level>(n, 0);
    return column_counts(R.rows());
}

inline Level round_up(Level r, Level t) { return r + (t + 1 - r % (t + 1)) % (t + 1); }

}  // namespace detail

/// Strand losses only remove ones, so each column count sits in
/// (c_j - (t+1), c_j]; rounding up to the next multiple of t+1 restores c.
inline CompositeVector sl_decode(const StrandLossCode& code, const ChannelOutput& R) {
    const auto r = detail::received_counts(R, code.M, code.t, code.n);
    std::vector<Level> y(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        y[j] = detail::round_up(r[j], code.t);
        if (y[j] > code.M) throw DecodeFailure(DecodeFailureReason::out_of_range, "rounded entry exceeds M");
    }
    return CompositeVector(code.M, std::move(y));
}

// ---------------------------------------------------------------------------
// VT syndromes and the composite single-deletion code

struct VtSyndrome {
    std::size_t value = 0;
    friend bool operator==(const VtSyndrome&, const VtSyndrome&) = default;
};

/// sum_j j * x_j mod (n+1), positions counted from 1.
inline VtSyndrome vt_syndrome(std::span<const Level> x, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s = (s + (j + 1) * static_cast<std::uint64_t>(x[j])) % (n + 1);
    return {static_cast<std::size_t>(s)};
}

inline VtSyndrome composite_vt_syndrome(const CompositeVector& x) { return vt_syndrome(x.entries(), x.length()); }

inline VtSyndrome composite_vt_syndrome(const Row& y) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j]) s = (s + j + 1) % (y.size() + 1);
    return {static_cast<std::size_t>(s)};
}

struct CompositeVTCode {
    Level M;
    std::size_t n;
    std::size_t a;

    CompositeVTCode(Level M_, std::size_t n_, std::size_t a_) : M(M_), n(n_), a(a_) {
        if (M < 1 || n < 1) throw ConfigError("VT code needs M >= 1 and n >= 1");
        if (a > n) throw ConfigError("VT residue must lie in [0, n]");
    }
};

inline bool vt_contains(const CompositeVTCode& code, const CompositeVector& x) {
    if (x.strands() != code.M || x.length() != code.n) throw ShapeError("vector does not match code dimensions");
    return composite_vt_syndrome(x).value == code.a;
}

namespace detail {

struct VtConstraint {
    std::size_t n;
    std::size_t a;
    std::size_t states() const noexcept { return n + 1; }
    std::size_t initial() const noexcept { return 0; }
    std::optional<std::size_t> step(std::size_t s, std::size_t pos, Level v) const noexcept {
        return (s + (pos + 1) * static_cast<std::size_t>(v)) % (n + 1);
    }
    bool accepts(std::size_t s) const noexcept { return s == a; }
};

}  // namespace detail

inline LexCodebook<detail::VtConstraint> vt_codebook(const CompositeVTCode& code) {
    return {code.M, code.n, detail::VtConstraint{code.n, code.a}};
}

inline BigInt vt_code_size(const CompositeVTCode& code) { return vt_codebook(code).size(); }

/// Codeword with the given rank in the lexicographically sorted code.
inline CompositeVector vt_encode(const CompositeVTCode& code, const BigInt& rank) {
    return vt_codebook(code).unrank(rank);
}

inline BigInt vt_rank(const CompositeVTCode& code, const CompositeVector& c) { return vt_codebook(code).rank(c); }

/// Levenshtein's single-deletion decoder for VT_b(n).
///
/// With w ones and weighted sum s' in the received row, the deficiency
/// d = (b - s') mod (n+1) says what was lost: d <= w means a 0 that had d ones
/// to its right, otherwise a 1 that had d - w - 1 zeros to its left.
inline Row binary_vt_decode(const Row& received, VtSyndrome b, std::size_t n) {
    if (b.value > n) throw DomainError("VT syndrome outside [0, n]");
    if (received.size() + 1 != n) throw DecodeFailure(DecodeFailureReason::row_length, "row is not one symbol short");
    std::uint64_t weighted = 0;
    std::size_t ones = 0;
    for (std::size_t j = 0; j < received.size(); ++j)
        if (received[j]) {
            weighted += j + 1;
            ++ones;
        }
    const std::size_t deficiency = static_cast<std::size_t>((b.value + (n + 1) - weighted % (n + 1)) % (n + 1));

    Row out = received;
    if (deficiency <= ones) {
        std::size_t pos = received.size();
        std::size_t right = 0;
        while (right < deficiency) {
            --pos;
            if (received[pos]) ++right;
        }
        out.insert(pos, false);
    } else {
        const std::size_t zeros_left = deficiency - ones - 1;
        std::size_t pos = 0;
        std::size_t seen = 0;
        while (seen < zeros_left) {
            if (pos >= received.size())
                throw DecodeFailure(DecodeFailureReason::uncorrectable, "no valid VT reinsertion point");
            if (!received[pos]) ++seen;
            ++pos;
        }
        out.insert(pos, true);
    }
    if (composite_vt_syndrome(out) != b)
        throw DecodeFailure(DecodeFailureReason::syndrome_mismatch, "VT repair did not reach the target syndrome");
    return out;
}

/// Intermediate quantities of a composite VT decode.
struct VtRepair {
    std::optional<std::size_t> short_row;
    VtSyndrome others;  // syndrome of the column sums of the intact rows
    VtSyndrome target;  // syndrome the damaged row must have had
    std::optional<Row> repaired;
    std::vector<Level> codeword;
};

/// Finds the short row, recovers its VT syndrome from the code residue and the
/// intact rows, and repairs it. With no short row the input is checked
/// against the code residue instead of being trusted.
inline VtRepair vt_sdc_repair(const CompositeVTCode& code, const ChannelOutput& R) {
    if (R.row_count() < code.M) throw DecodeFailure(DecodeFailureReason::missing_rows, "strands missing");
    if (R.row_count() > code.M) throw DecodeFailure(DecodeFailureReason::extra_rows, "more rows than strands");
    const std::size_t n = code.n;
    VtRepair out;
    for (std::size_t i = 0; i < R.row_count(); ++i) {
        const std::size_t len = R.row(i).size();
        if (len == n) continue;
        if (len + 1 != n) throw DecodeFailure(DecodeFailureReason::row_length, "row length is neither n nor n-1");
        if (out.short_row)
            throw DecodeFailure(DecodeFailureReason::multiple_short_rows, "more than one row lost a symbol");
        out.short_row = i;
    }

    std::vector<Level> sums(n, 0);
    for (std::size_t i = 0; i < R.row_count(); ++i) {
        if (out.short_row && *out.short_row == i) continue;
        for (std::size_t j = 0; j < n; ++j) sums[j] += R.row(i)[j] ? 1 : 0;
    }
    out.others = vt_syndrome(sums, n);
    out.target = {(code.a + (n + 1) - out.others.value) % (n + 1)};

    if (out.short_row) {
        out.repaired = binary_vt_decode(R.row(*out.short_row), out.target, n);
        for (std::size_t j = 0; j < n; ++j) sums[j] += (*out.repaired)[j] ? 1 : 0;
    }
    if (vt_syndrome(sums, n).value != code.a)
        throw DecodeFailure(DecodeFailureReason::syndrome_mismatch, "received matrix is not in the code");
    out.codeword = std::move(sums);
    return out;
}

inline CompositeVector vt_sdc_decode(const CompositeVTCode& code, const ChannelOutput& R) {
    return CompositeVector(code.M, vt_sdc_repair(code, R).codeword);
}

// ---------------------------------------------------------------------------
// shortened Hamming inner code and the combined loss + substitution code

/// Binary single-error-correcting code of any length n: the parity-check
/// column of position j (1-based) is the binary expansion of j, so the
/// syndrome of a single error names its position. Columns 1..n use
/// m = bit_width(n) check bits, leaving dimension n - m.
struct ShortenedHamming {
    std::size_t n;

    explicit ShortenedHamming(std::size_t n_) : n(n_) {
        if (n < 1) throw ConfigError("inner code needs n >= 1");
    }

    std::size_t check_bits() const noexcept { return static_cast<std::size_t>(std::bit_width(n)); }
    std::size_t dimension() const noexcept { return n - check_bits(); }

    template <typename Bits>
    std::size_t syndrome(const Bits& bits) const {
        std::size_t s = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (bits[j]) s ^= j + 1;
        return s;
    }

    /// 0 if no error, otherwise the 1-based error position; throws when the
    /// syndrome names no position.
    template <typename Bits>
    std::size_t locate_error(const Bits& bits) const {
        const std::size_t s = syndrome(bits);
        if (s > n) throw DecodeFailure(DecodeFailureReason::uncorrectable, "inner syndrome names no position");
        return s;
    }
};

struct CombinedLSCode {
    Level M;
    std::size_t n;
    Level t;
    ShortenedHamming inner;

    CombinedLSCode(Level M_, std::size_t n_, Level t_) : M(M_), n(n_), t(t_), inner(n_) {
        if (M <= 1) throw ConfigError("loss+substitution code needs M > 1");
        if (t < 1 || t >= M) throw ConfigError("loss+substitution code needs 1 <= t < M");
    }
};

namespace detail {

// state = running inner syndrome
struct LsConstraint {
    Level t;
    std::size_t n;
    std::size_t states() const noexcept { return std::size_t{1} << std::bit_width(n); }
    std::size_t initial() const noexcept { return 0; }
    std::optional<std::size_t> step(std::size_t s, std::size_t pos, Level v) const noexcept {
        if (v % (t + 1) != 0) return std::nullopt;
        return ((v / (t + 1)) & 1u) ? s ^ (pos + 1) : s;
    }
    bool accepts(std::size_t s) const noexcept { return s == 0; }
};

}  // namespace detail

inline bool ls_contains(const CombinedLSCode& code, const CompositeVector& x) {
    if (x.strands() != code.M || x.length() != code.n) throw ShapeError("vector does not match code dimensions");
    std::vector<bool> parity(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        if (x[j] % (code.t + 1) != 0) return false;
        parity[j] = ((x[j] / (code.t + 1)) & 1u) != 0;
    }
    return code.inner.syndrome(parity) == 0;
}

inline LexCodebook<detail::LsConstraint> ls_codebook(const CombinedLSCode& code) {
    return {code.M, code.n, detail::LsConstraint{code.t, code.n}};
}

inline BigInt ls_code_size(const CombinedLSCode& code) { return ls_codebook(code).size(); }

inline CompositeVector ls_encode(const CombinedLSCode& code, const BigInt& rank) {
    return ls_codebook(code).unrank(rank);
}

inline BigInt ls_rank(const CombinedLSCode& code, const CompositeVector& c) { return ls_codebook(code).rank(c); }

/// Which correction ls_decode applied.
enum class LsBranch { none, raise, lower };

struct LsDecodeResult {
    CompositeVector codeword;
    LsBranch branch = LsBranch::none;
    std::size_t column = 0;  // 0-based, meaningful when branch != none
};

/// Rounds column counts up to multiples of t+1 (undoing the losses), then
/// lets the inner code locate a substituted column h. If rounding left h
/// alone the substitution removed a one on top of t losses, so c_h = r_h + t + 1;
/// otherwise it added a one, so c_h = r_h - 1.
inline LsDecodeResult ls_decode_traced(const CombinedLSCode& code, const ChannelOutput& R) {
    const auto r = detail::received_counts(R, code.M, code.t, code.n);
    const Level step = code.t + 1;
    std::vector<Level> y(code.n);
    std::vector<bool> parity(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        y[j] = detail::round_up(r[j], code.t);
        parity[j] = ((y[j] / step) & 1u) != 0;
    }
    LsBranch branch = LsBranch::none;
    std::size_t column = 0;
    if (const std::size_t err = code.inner.locate_error(parity); err != 0) {
        column = err - 1;
        if (y[column] == r[column]) {
            y[column] = r[column] + step;
            branch = LsBranch::raise;
        } else {
            y[column] = r[column] - 1;
            branch = LsBranch::lower;
        }
    }
    for (Level v : y)
        if (v > code.M) throw DecodeFailure(DecodeFailureReason::out_of_range, "decoded entry exceeds M");
    CompositeVector c(code.M, std::move(y));
    if (!ls_contains(code, c)) throw DecodeFailure(DecodeFailureReason::not_a_codeword, "correction left the code");
    return {std::move(c), branch, column};
}

inline CompositeVector ls_decode(const CombinedLSCode& code, const ChannelOutput& R) {
    return ls_decode_traced(code, R).codeword;
}

// ---------------------------------------------------------------------------

/// True iff every pair of distinct codewords is at L1 distance >= 2t+1.
inline bool min_l1_membership(std::span<const CompositeVector> codebook, std::uint64_t t) {
    for (std::size_t i = 0; i < codebook.size(); ++i)
        for (std::size_t k = i + 1; k < codebook.size(); ++k)
            if (l1_distance(codebook[i], codebook[k]) < 2 * t + 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// code specifications: "L M n t", "D M n 1 a", "LS M n t [hamming]"

enum class CodeKind { strand_loss, deletion, loss_substitution };

struct CodeSpec {
    CodeKind kind;
    Level M = 1;
    std::size_t n = 1;
    Level t = 1;
    std::size_t a = 0;

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

inline CodeKind parse_code_kind(const std::string& text) {
    if (text == "L") return CodeKind::strand_loss;
    if (text == "D") return CodeKind::deletion;
    if (text == "LS") return CodeKind::loss_substitution;
    throw ConfigError("unknown code kind '" + text + "' (expected L, D or LS)");
}

inline std::string format_code_spec(const CodeSpec& spec) {
    std::ostringstream out;
    switch (spec.kind) {
        case CodeKind::strand_loss: out << "L " << spec.M << ' ' << spec.n << ' ' << spec.t; break;
        case CodeKind::deletion: out << "D " << spec.M << ' ' << spec.n << " 1 " << spec.a; break;
        case CodeKind::loss_substitution: out << "LS " << spec.M << ' ' << spec.n << ' ' << spec.t << " hamming"; break;
    }
    return out.str();
}

inline CodeSpec parse_code_spec(const std::string& line) {
    std::istringstream in(line);
    std::string kind;
    long long M = -1, n = -1, t = -1;
    if (!(in >> kind >> M >> n >> t) || M < 1 || n < 1 || t < 0) throw FormatError("expected 'kind M n t [a]'");
    CodeSpec spec{parse_code_kind(kind), static_cast<Level>(M), static_cast<std::size_t>(n), static_cast<Level>(t), 0};
    std::string extra;
    if (spec.kind == CodeKind::deletion) {
        long long a = -1;
        if (!(in >> a) || a < 0) throw FormatError("VT code spec needs a residue a");
        if (t != 1) throw FormatError("VT code corrects exactly one deletion (t = 1)");
        spec.a = static_cast<std::size_t>(a);
    } else if (spec.kind == CodeKind::loss_substitution) {
        if (in >> extra && extra != "hamming") throw FormatError("only the shortened Hamming inner code is supported");
    }
    if (in >> extra) throw FormatError("trailing tokens in code spec");
    return spec;
}

/// Messages: n base-radix digits for L, a single rank for D and LS.
inline CompositeVector encode_message(const CodeSpec& spec, std::span<const BigInt> message) {
    switch (spec.kind) {
        case CodeKind::strand_loss: {
            StrandLossCode code(spec.M, spec.n, spec.t);
            std::vector<Level> digits;
            for (const BigInt& d : message) {
                if (d < 0 || d >= code.radix()) throw EncodeError("message digit out of range");
                digits.push_back(static_cast<Level>(d));
            }
            return sl_encode(code, digits);
        }
        case CodeKind::deletion:
            if (message.size() != 1) throw EncodeError("VT message is a single rank");
            return vt_encode(CompositeVTCode(spec.M, spec.n, spec.a), message[0]);
        case CodeKind::loss_substitution:
            if (message.size() != 1) throw EncodeError("loss+substitution message is a single rank");
            return ls_encode(CombinedLSCode(spec.M, spec.n, spec.t), message[0]);
    }
    throw ConfigError("unknown code kind");
}

inline CompositeVector decode_output(const CodeSpec& spec, const ChannelOutput& R) {
    switch (spec.kind) {
        case CodeKind::strand_loss: return sl_decode(StrandLossCode(spec.M, spec.n, spec.t), R);
        case CodeKind::deletion: return vt_sdc_decode(CompositeVTCode(spec.M, spec.n, spec.a), R);
        case CodeKind::loss_substitution: return ls_decode(CombinedLSCode(spec.M, spec.n, spec.t), R);
    }
    throw ConfigError("unknown code kind");
}

}  // namespace cdna
