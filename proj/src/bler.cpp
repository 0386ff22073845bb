#include "ntnharq/bler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "ntnharq/errors.hpp"

namespace ntnharq::bler {

namespace {

std::string curve_name(int tbs, int n_rep) {
    return "(tbs " + std::to_string(tbs) + ", n_rep " + std::to_string(n_rep) + ")";
}

void check_curve(const BlerCurve& c) {
    if (c.tbs_bits <= 0 || c.n_rep <= 0) {
        throw InvalidInput("curve key must be positive " + curve_name(c.tbs_bits, c.n_rep));
    }
    if (c.points.empty()) {
        throw InvalidInput("empty curve " + curve_name(c.tbs_bits, c.n_rep));
    }
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& p = c.points[i];
        if (!(p.bler > 0.0 && p.bler <= 1.0)) {
            throw InvalidInput("BLER outside (0, 1] in " + curve_name(c.tbs_bits, c.n_rep));
        }
        if (i > 0) {
            const auto& prev = c.points[i - 1];
            if (!(p.snr_db > prev.snr_db)) {
                throw InvalidInput("SNR not strictly increasing in " + curve_name(c.tbs_bits, c.n_rep));
            }
            if (p.bler > prev.bler) {
                throw InvalidInput("BLER increases with SNR in " + curve_name(c.tbs_bits, c.n_rep));
            }
        }
    }
}

double interpolate(const BlerCurve& c, double snr_db) {
    const auto& pts = c.points;
    if (snr_db <= pts.front().snr_db) {
        return pts.front().bler;
    }
    if (snr_db >= pts.back().snr_db) {
        return pts.back().bler;
    }
    const auto hi = std::lower_bound(pts.begin(), pts.end(), snr_db,
                                     [](const BlerPoint& p, double s) { return p.snr_db < s; });
    if (hi->snr_db == snr_db) {
        return hi->bler;
    }
    const auto lo = std::prev(hi);
    const double t = (snr_db - lo->snr_db) / (hi->snr_db - lo->snr_db);
    const double log_bler = std::log10(lo->bler) + t * (std::log10(hi->bler) - std::log10(lo->bler));
    return std::pow(10.0, log_bler);
}

}  // namespace

BlerTable::BlerTable(std::vector<BlerCurve> curves) {
    for (auto& c : curves) {
        check_curve(c);
        const auto key = std::make_pair(c.tbs_bits, c.n_rep);
        if (curves_.contains(key)) {
            throw InvalidInput("duplicate curve " + curve_name(c.tbs_bits, c.n_rep));
        }
        curves_.emplace(key, std::move(c));
    }

    // More repetitions must never hurt: compare neighbouring curves of each
    // TBS on the union of their tabulated SNRs.
    std::set<int> sizes;
    for (const auto& [key, c] : curves_) {
        sizes.insert(key.first);
    }
    for (int tbs : sizes) {
        const auto reps = repetitions(tbs);
        std::set<double> snrs;
        for (int r : reps) {
            for (const auto& p : curves_.at({tbs, r}).points) {
                snrs.insert(p.snr_db);
            }
        }
        for (std::size_t i = 1; i < reps.size(); ++i) {
            const auto& fewer = curves_.at({tbs, reps[i - 1]});
            const auto& more = curves_.at({tbs, reps[i]});
            for (double s : snrs) {
                if (interpolate(more, s) > interpolate(fewer, s) * (1.0 + 1e-9)) {
                    throw InvalidInput("BLER rises with repetitions at " + std::to_string(s) + " dB between " +
                                       curve_name(tbs, reps[i - 1]) + " and " + curve_name(tbs, reps[i]));
                }
            }
        }
    }
}

BlerTable BlerTable::parse(std::istream& in) {
    std::map<std::pair<int, int>, BlerCurve> acc;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream fields(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(fields, tok, ',')) {
            toks.push_back(tok);
        }
        if (toks.size() != 4) {
            throw InvalidInput("line " + std::to_string(line_no) + ": expected tbs,n_rep,snr_db,bler");
        }
        try {
            const int tbs = std::stoi(toks[0]);
            const int n_rep = std::stoi(toks[1]);
            const double snr = std::stod(toks[2]);
            const double b = std::stod(toks[3]);
            auto& c = acc[{tbs, n_rep}];
            c.tbs_bits = tbs;
            c.n_rep = n_rep;
            c.points.push_back({snr, b});
        } catch (const std::logic_error&) {
            throw InvalidInput("line " + std::to_string(line_no) + ": malformed number");
        }
    }
    std::vector<BlerCurve> curves;
    for (auto& [key, c] : acc) {
        curves.push_back(std::move(c));
    }
    return BlerTable(std::move(curves));
}

BlerTable BlerTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw NotFound("cannot open BLER table " + path.string());
    }
    return parse(in);
}

const BlerCurve& BlerTable::curve(int tbs_bits, int n_rep) const {
    const auto it = curves_.find({tbs_bits, n_rep});
    if (it == curves_.end()) {
        throw NotFound("no BLER curve " + curve_name(tbs_bits, n_rep));
    }
    return it->second;
}

double BlerTable::bler_at(int tbs_bits, int n_rep, double snr_db) const {
    return interpolate(curve(tbs_bits, n_rep), snr_db);
}

std::vector<int> BlerTable::repetitions(int tbs_bits) const {
    std::vector<int> reps;
    for (auto it = curves_.lower_bound({tbs_bits, 0}); it != curves_.end() && it->first.first == tbs_bits; ++it) {
        reps.push_back(it->first.second);
    }
    return reps;
}

int BlerTable::select_repetitions(int tbs_bits, double snr_db, double target_bler) const {
    const auto reps = repetitions(tbs_bits);
    if (reps.empty()) {
        throw NotFound("no BLER curves for tbs " + std::to_string(tbs_bits));
    }
    for (int r : reps) {
        if (bler_at(tbs_bits, r, snr_db) <= target_bler) {
            return r;
        }
    }
    throw Infeasible("no repetition count reaches BLER " + std::to_string(target_bler) + " for tbs " +
                     std::to_string(tbs_bits) + " at " + std::to_string(snr_db) + " dB");
}

std::vector<BlerCurve> BlerTable::curves() const {
    std::vector<BlerCurve> out;
    out.reserve(curves_.size());
    for (const auto& [key, c] : curves_) {
        out.push_back(c);
    }
    return out;
}

double spectral_efficiency(int tbs_bits, int n_rep) {
    if (n_rep < 1) {
        throw InvalidInput("n_rep must be >= 1");
    }
    return static_cast<double>(tbs_bits) / n_rep;
}

}  // namespace ntnharq::bler
