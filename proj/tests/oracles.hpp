#pragma once

#include <cstdint>
#include <vector>

namespace oracles {

/// round-half-up(1000 * a / b) computed in integers; 0 when b == 0.
inline std::int64_t thousandths(std::int64_t a, std::int64_t b) {
    if (b == 0) return 0;
    return (2000 * a + b) / (2 * b);
}

struct Matrix {
    std::int64_t tp, fp, fn, tn;
    bool operator==(const Matrix&) const = default;
};

/// Displayed accuracy/precision/recall/F1 in thousandths.
struct Row {
    std::int64_t acc, prec, rec, f1;
    bool operator==(const Row&) const = default;
};

inline Row row_of(const Matrix& m) {
    return {thousandths(m.tp + m.tn, m.tp + m.fp + m.fn + m.tn), thousandths(m.tp, m.tp + m.fp),
            thousandths(m.tp, m.tp + m.fn), thousandths(2 * m.tp, 2 * m.tp + m.fp + m.fn)};
}

/// Every matrix with `pos` gold Yes and `neg` gold No whose displayed row
/// equals `want`.
inline std::vector<Matrix> enumerate(std::int64_t pos, std::int64_t neg, const Row& want) {
    std::vector<Matrix> out;
    for (std::int64_t tp = 0; tp <= pos; ++tp)
        for (std::int64_t fp = 0; fp <= neg; ++fp) {
            const Matrix m{tp, fp, pos - tp, neg - fp};
            if (row_of(m) == want) out.push_back(m);
        }
    return out;
}

}  // namespace oracles
