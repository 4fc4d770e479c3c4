#include "mlcomp/hamming.hpp"

namespace mlcomp {

LinearCode shortened_hamming(int k) {
    if (k < 1)
        throw shape_error("information length must be positive");

    int r = 2;
    while ((1 << r) - r - 1 < k)
        ++r;

    LinearCode code;
    code.k = k;
    code.r = r;
    code.n_hat = k + r;

    // columns of the parent code are the nonzero r-bit numerals; information
    // positions take the non-powers-of-two in ascending order, parity
    // positions the powers of two
    std::vector<int> info_syndromes;
    for (int v = 1; v < (1 << r) && static_cast<int>(info_syndromes.size()) < k; ++v)
        if ((v & (v - 1)) != 0)
            info_syndromes.push_back(v);

    code.column_syndrome.resize(static_cast<size_t>(code.n_hat));
    for (int j = 0; j < k; ++j)
        code.column_syndrome[static_cast<size_t>(j)] = info_syndromes[static_cast<size_t>(j)];
    for (int t = 0; t < r; ++t)
        code.column_syndrome[static_cast<size_t>(k + t)] = 1 << t;

    code.generator.assign(static_cast<size_t>(k),
                          std::vector<int>(static_cast<size_t>(code.n_hat), 0));
    for (int i = 0; i < k; ++i) {
        auto& row = code.generator[static_cast<size_t>(i)];
        row[static_cast<size_t>(i)] = 1;
        int s = info_syndromes[static_cast<size_t>(i)];
        for (int t = 0; t < r; ++t)
            row[static_cast<size_t>(k + t)] = (s >> t) & 1;
    }
    return code;
}

std::vector<int> encode(const LinearCode& code, const std::vector<int>& u) {
    if (static_cast<int>(u.size()) != code.k)
        throw shape_error("information word length mismatch");
    std::vector<int> v(static_cast<size_t>(code.n_hat), 0);
    for (int i = 0; i < code.k; ++i) {
        if (u[static_cast<size_t>(i)] == 0)
            continue;
        for (int j = 0; j < code.n_hat; ++j)
            v[static_cast<size_t>(j)] ^= code.generator[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return v;
}

int decode_error_position(const LinearCode& code, const std::vector<int>& v) {
    if (static_cast<int>(v.size()) != code.n_hat)
        throw shape_error("received word length mismatch");
    int syndrome = 0;
    for (int j = 0; j < code.n_hat; ++j)
        if (v[static_cast<size_t>(j)] & 1)
            syndrome ^= code.column_syndrome[static_cast<size_t>(j)];
    if (syndrome == 0)
        return 0;
    for (int j = 0; j < code.n_hat; ++j)
        if (code.column_syndrome[static_cast<size_t>(j)] == syndrome)
            return j + 1;
    return 0;  // syndrome of a column removed by shortening
}

std::vector<int> odd_map(const std::vector<Symbol>& x) {
    std::vector<int> bits(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        bits[i] = x[i] & 1;
    return bits;
}

Symbol err_map(Symbol a, int q) {
    if (a < 0 || a >= q)
        throw range_error("symbol out of range");
    return a < q - 1 ? a + 1 : a - 1;
}

}  // namespace mlcomp
