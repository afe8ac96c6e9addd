#include "bohm/reference_tables.hpp"

#include "bohm/spectral.hpp"

#include <cmath>
#include <numbers>

namespace bohm {

std::span<const ReferenceState> reference_states() {
    static const std::vector<ReferenceState> states = {
        {Parity::Even, 1, 0, {{0, -.2176}, {1, .4352}, {2, -.0714}, {3, .0118}}, 1.2223},
        {Parity::Even, 2, 1, {{0, -.0733}, {1, .2419}, {2, -.8393}, {3, .0541}}, 4.4767},
        {Parity::Even, 3, 2, {{0, -.0420}, {1, .1240}, {2, -.2772}, {3, .8240}}, 10.6657},
        {Parity::Odd, 1, 0, {{1, .8118}, {2, -.0739}}, 0.9767},
        {Parity::Odd, 2, 1, {{1, -.1799}, {2, -.8367}}, 4.4106},
        {Parity::Odd, 3, 2, {{1, -.0808}, {2, .2568}, {3, -.8257}}, 10.6151},
    };
    return states;
}

const ReferenceState* find_reference_state(Parity parity, int n, int m) {
    for (const auto& s : reference_states())
        if (s.parity == parity && s.n == n && s.m == m) return &s;
    return nullptr;
}

namespace {

constexpr std::array<int, 12> all(int d) {
    std::array<int, 12> out{};
    out.fill(d);
    return out;
}

} // namespace

const ReferenceLyapunovTable& reference_table2() {
    static const ReferenceLyapunovTable table{
        "table2",
        {
            {2.12, 4.23, 2.53, 1.91, 3.36, 2.29, 2.75, 2.55, 3.11, 1.72, 1.23, 2.70},
            {4.10, 5.08, 3.67, 2.65, 4.17, 2.69, 2.57, 2.85, 5.73, 2.39, 2.59, 3.27},
            {21.9, 12.7, 13.9, 9.35, 11.5, 6.35, .96, 5.53, 29.3, 8.44, 14.8, 8.40},
            all(2),
            all(2),
            {1, 1, 1, 2, 1, 2, 2, 2, 1, 2, 1, 2},
        },
        {
            {.030, .036, .034, .033, .036, .032, .030, .036, .034, .033, .033, .036},
            {.047, .056, .050, .046, .049, .048, .047, .056, .050, .046, .046, .056},
            {.185, .234, .179, .161, .155, .195, .186, .233, .179, .160, .155, .235},
            all(3),
            all(3),
            all(3),
        },
    };
    return table;
}

const ReferenceLyapunovTable& reference_table3() {
    static const ReferenceLyapunovTable table{
        "table3",
        {
            {2.46, 1.69, 1.68, 1.63, 1.67, 1.86, 2.01, 3.59, 3.64, 3.22, 3.13, 6.87},
            {2.55, 1.65, 1.63, 1.58, 1.61, 1.74, 1.92, 3.28, 3.97, 3.99, 3.73, 6.90},
            {3.39, 1.23, 1.02, 1.19, 1.07, .067, 1.18, .447, 7.00, 10.90, 9.14, 7.16},
            all(2),
            all(2),
            {2, 2, 2, 2, 2, 3, 2, 3, 2, 2, 2, 2},
        },
        {
            {.086, .684, -.003, .022, .002, .009, .086, .684, -.003, .022, .002, .009},
            {.122, .336, .450, .124, .015, .032, .122, .336, .450, .124, .015, .032},
            {.415, -2.45, 4.52, .942, .133, .239, .415, -2.45, 4.52, .942, .133, .239},
            all(3),
            all(3),
            {3, 2, 2, 3, 3, 3, 3, 2, 2, 3, 3, 3},
        },
    };
    return table;
}

std::array<double, 12> reference_theta0_grid() {
    std::array<double, 12> grid{};
    for (std::size_t k = 0; k < grid.size(); ++k)
        grid[k] = static_cast<double>(k) * std::numbers::pi / 6.0;
    return grid;
}

IdentityCheck check_window_identity(const ReferenceLyapunovHalf& half, std::size_t column,
                                    double t1, double t2) {
    const auto half_unit = [](int decimals) { return 0.5 * std::pow(10.0, -decimals); };
    IdentityCheck out{};
    out.implied = (t2 * half.lambda10[column] - t1 * half.lambda9[column]) / (t2 - t1);
    out.printed = half.lambda[column];
    out.deviation = std::abs(out.implied - out.printed);
    out.rounding = (t2 * half_unit(half.decimals10[column]) + t1 * half_unit(half.decimals9[column])) /
                       (t2 - t1) +
                   half_unit(half.decimals_lambda[column]);
    // Tiny slack so a deviation exactly at the rounding bound is not lost to
    // binary representation of the printed decimals.
    out.consistent = out.deviation <= out.rounding * (1.0 + 1e-9);
    return out;
}

} // namespace bohm
