#include "entfb/sweep.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

namespace entfb {

std::string format_sig12(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string sweep_csv_header() {
    return "chi,eta,lambda_star,l_fb,l_nofb,epr_variance_nofb,zeta";
}

std::string to_csv_row(const SweepRecord& rec) {
    std::string row;
    row.reserve(120);
    row += format_sig12(rec.chi);
    row += ',';
    row += format_sig12(rec.eta);
    row += ',';
    row += format_sig12(rec.lambda_star);
    row += ',';
    row += format_sig12(rec.l_fb);
    row += ',';
    row += format_sig12(rec.l_nofb);
    row += ',';
    row += format_sig12(rec.epr_variance_nofb);
    row += ',';
    row += format_sig12(rec.zeta);
    return row;
}

SweepRecord evaluate_sweep_point(double chi, double eta, const OptimizerConfig& cfg) {
    const OptimizationResult opt = maximize_log_negativity(chi, eta, cfg);
    SweepRecord rec;
    rec.chi = chi;
    rec.eta = eta;
    rec.lambda_star = opt.lambda_star;
    rec.l_fb = opt.l_fb;
    rec.l_nofb = opt.l_nofb;
    const ModelParams nofb{chi, eta, 0.0, Complex{}};
    rec.epr_variance_nofb = epr_variance(closed_form_covariance(nofb, cfg.stability_margin));
    const ModelParams starred{chi, eta, opt.lambda_star, Complex{}};
    rec.zeta = pt_zeta(closed_form_covariance(starred, cfg.stability_margin));
    return rec;
}

std::vector<SweepRecord> run_sweep(double chi_min, double chi_max, int chi_steps,
                                   const std::vector<double>& etas, const OptimizerConfig& cfg) {
    if (chi_steps < 1 || !(chi_min <= chi_max) || !(chi_min >= 0.0) || !(chi_max < 0.5)) {
        throw Error(ErrorCode::InvalidConfig, "chi grid must satisfy 0 <= chi_min <= chi_max < 1/2");
    }
    if (etas.empty()) {
        throw Error(ErrorCode::InvalidConfig, "eta list must not be empty");
    }
    for (const double eta : etas) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw Error(ErrorCode::EtaOutOfRange, "eta list entries must lie in [0, 1]");
        }
    }

    std::vector<SweepRecord> records;
    records.reserve(static_cast<std::size_t>(chi_steps) * etas.size());
    for (int i = 0; i < chi_steps; ++i) {
        const double chi =
            (chi_steps == 1)
                ? chi_min
                : chi_min + (chi_max - chi_min) * static_cast<double>(i) / (chi_steps - 1);
        for (const double eta : etas) {
            records.push_back(evaluate_sweep_point(chi, eta, cfg));
        }
    }
    return records;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << sweep_csv_header() << '\n';
    for (const auto& rec : records) out << to_csv_row(rec) << '\n';
}

std::vector<SweepRecord> parse_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != sweep_csv_header()) {
        throw Error(ErrorCode::InvalidConfig, "unexpected CSV header");
    }
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 7> fields{};
        const char* cursor = line.data();
        const char* end = line.data() + line.size();
        for (std::size_t f = 0; f < fields.size(); ++f) {
            const auto parsed = std::from_chars(cursor, end, fields[f]);
            if (parsed.ec != std::errc{}) {
                throw Error(ErrorCode::InvalidConfig, "malformed CSV row: " + line);
            }
            cursor = parsed.ptr;
            if (f + 1 < fields.size()) {
                if (cursor == end || *cursor != ',') {
                    throw Error(ErrorCode::InvalidConfig, "malformed CSV row: " + line);
                }
                ++cursor;
            }
        }
        records.push_back(SweepRecord{fields[0], fields[1], fields[2], fields[3], fields[4],
                                      fields[5], fields[6]});
    }
    return records;
}

}  // namespace entfb
