#pragma once

#include <nlohmann/json.hpp>

namespace spincover::golden {

/// Packaged self-test vectors: the fixed classification table, the sigma-set
/// sign case, representation and involution spot checks.  `spincover selftest
/// --input FILE` runs a user-supplied copy instead, so the table round-trips
/// through `--dump-golden`.
inline nlohmann::json default_items() {
    using nlohmann::json;
    json items = json::array();

    auto diag = [](std::initializer_list<double> d) {
        json rows = json::array();
        const int n = static_cast<int>(d.size());
        int i = 0;
        for (double x : d) {
            json row = json::array();
            for (int j = 0; j < n; ++j) row.push_back(j == i ? x : 0.0);
            rows.push_back(std::move(row));
            ++i;
        }
        return rows;
    };
    auto blade_mv = [](int p, int q, std::initializer_list<int> idx, double c) {
        json index = json::array();
        for (int a : idx) index.push_back(a);
        return json{{"p", p},
                    {"q", q},
                    {"field", "real"},
                    {"terms", json::array({json{{"index", index}, {"re", c}}})}};
    };

    items.push_back({{"name", "anticommutation_relations_cl23"},
                     {"kind", "anticommutation"},
                     {"p", 2},
                     {"q", 3}});
    items.push_back({{"name", "trace_cyclicity_cl13"},
                     {"kind", "trace_cyclic"},
                     {"p", 1},
                     {"q", 3},
                     {"seed", 7},
                     {"trials", 20},
                     {"tolerance", 1e-10}});
    items.push_back({{"name", "reversion_sign_grade2"},
                     {"kind", "reversion_sign"},
                     {"p", 3},
                     {"q", 0},
                     {"index", {1, 2}},
                     {"expected_sign", -1.0}});
    items.push_back({{"name", "reversion_sign_grade3"},
                     {"kind", "reversion_sign"},
                     {"p", 3},
                     {"q", 0},
                     {"index", {1, 2, 3}},
                     {"expected_sign", -1.0}});

    items.push_back({{"name", "classify_time_reversal_o11"},
                     {"kind", "classify"},
                     {"matrix", {{"p", 1}, {"q", 1}, {"matrix", diag({-1, 1})}}},
                     {"expected", "O_down_prime"}});
    items.push_back({{"name", "classify_parity_reversal_o11"},
                     {"kind", "classify"},
                     {"matrix", {{"p", 1}, {"q", 1}, {"matrix", diag({1, -1})}}},
                     {"expected", "O_up_prime"}});

    items.push_back({{"name", "project_e1_cl11_is_minus_eta"},
                     {"kind", "project"},
                     {"multivector", blade_mv(1, 1, {1}, 1.0)},
                     {"expected_matrix", {{"p", 1}, {"q", 1}, {"matrix", diag({-1, 1})}}}});

    items.push_back({{"name", "membership_identity_cl11"},
                     {"kind", "membership"},
                     {"multivector", blade_mv(1, 1, {}, 1.0)},
                     {"expected_groups",
                      {"Pin", "Spin", "Pin_up", "Pin_down", "Spin_up_down"}},
                     {"expected_component", "Spin_up_down"}});
    items.push_back({{"name", "membership_e1_cl11"},
                     {"kind", "membership"},
                     {"multivector", blade_mv(1, 1, {1}, 1.0)},
                     {"expected_groups", {"Pin", "Pin_down"}},
                     {"expected_component", "Pin_down_prime"}});
    items.push_back({{"name", "membership_e12_cl11"},
                     {"kind", "membership"},
                     {"multivector", blade_mv(1, 1, {1, 2}, 1.0)},
                     {"expected_groups", {"Pin", "Spin"}},
                     {"expected_component", "Spin_prime"}});

    // Time reversal, parity reversal and -I for every odd p, odd q, p+q <= 6:
    // the covers are e^{1..p}, e^{p+1..n} and e^{1..n}.
    for (int p = 1; p <= 5; p += 2)
        for (int q = 1; p + q <= 6; q += 2) {
            const int n = p + q;
            auto tag = [&](const char* base) {
                return std::string(base) + "_cl" + std::to_string(p) + std::to_string(q);
            };
            std::initializer_list<int> dummy{};
            (void)dummy;

            json time_rev = json::array();
            json parity_rev = json::array();
            json minus_i = json::array();
            for (int i = 0; i < n; ++i) {
                json r1 = json::array(), r2 = json::array(), r3 = json::array();
                for (int j = 0; j < n; ++j) {
                    const double eta = i < p ? 1.0 : -1.0;
                    r1.push_back(i == j ? -eta : 0.0);
                    r2.push_back(i == j ? eta : 0.0);
                    r3.push_back(i == j ? -1.0 : 0.0);
                }
                time_rev.push_back(r1);
                parity_rev.push_back(r2);
                minus_i.push_back(r3);
            }
            json idx_time = json::array(), idx_parity = json::array(), idx_full = json::array();
            for (int a = 1; a <= p; ++a) idx_time.push_back(a);
            for (int a = p + 1; a <= n; ++a) idx_parity.push_back(a);
            for (int a = 1; a <= n; ++a) idx_full.push_back(a);
            auto mv = [&](const json& index) {
                return json{{"p", p},
                            {"q", q},
                            {"field", "real"},
                            {"terms", json::array({json{{"index", index}, {"re", 1.0}}})}};
            };

            items.push_back({{"name", tag("lift_time_reversal")},
                             {"kind", "lift"},
                             {"matrix", {{"p", p}, {"q", q}, {"matrix", time_rev}}},
                             {"expected_T", mv(idx_time)},
                             {"expected_component", "Pin_down_prime"},
                             {"expected_norm", "+e"}});
            items.push_back({{"name", tag("lift_parity_reversal")},
                             {"kind", "lift"},
                             {"matrix", {{"p", p}, {"q", q}, {"matrix", parity_rev}}},
                             {"expected_T", mv(idx_parity)},
                             {"expected_component", "Pin_up_prime"},
                             {"expected_norm", "-e"}});
            items.push_back({{"name", tag("lift_minus_identity")},
                             {"kind", "lift"},
                             {"matrix", {{"p", p}, {"q", q}, {"matrix", minus_i}}},
                             {"expected_T", mv(idx_full)},
                             {"expected_component", "Spin_prime"},
                             {"expected_norm", "-e"}});
        }

    items.push_back({{"name", "pauli_sigma_set_cl30"}, {"kind", "gamma_sigma"}});
    items.push_back({{"name", "sigma_vs_minus_sigma_needs_sign"}, {"kind", "sigma_sign"}});

    return items;
}

}  // namespace spincover::golden
