#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <utility>
#include <vector>

namespace ntnharq::bler {

struct BlerPoint {
    double snr_db;
    double bler;
};

/// BLER waterfall for one (TBS, repetition count) pair.
struct BlerCurve {
    int tbs_bits = 0;
    int n_rep = 0;
    std::vector<BlerPoint> points;  // strictly increasing SNR
};

/// Immutable set of BLER curves keyed by (TBS, repetitions).
///
/// Construction checks every curve (SNR strictly increasing, BLER in (0, 1]
/// and non-increasing with SNR) and that, for a fixed TBS, adding
/// repetitions never raises the BLER at any tabulated SNR.
class BlerTable {
public:
    BlerTable() = default;
    explicit BlerTable(std::vector<BlerCurve> curves);

    /// Reads `tbs,n_rep,snr_db,bler` records; `#` starts a comment.
    static BlerTable parse(std::istream& in);
    static BlerTable load(const std::filesystem::path& path);

    /// Log-linear interpolation of BLER against SNR in dB, clamped to the
    /// curve's end values outside its SNR range.
    double bler_at(int tbs_bits, int n_rep, double snr_db) const;

    /// Smallest tabulated repetition count whose BLER at `snr_db` is at
    /// most `target_bler`. Throws Infeasible if none qualifies.
    int select_repetitions(int tbs_bits, double snr_db, double target_bler) const;

    /// Repetition counts available for `tbs_bits`, ascending.
    std::vector<int> repetitions(int tbs_bits) const;

    bool empty() const { return curves_.empty(); }
    std::vector<BlerCurve> curves() const;

private:
    const BlerCurve& curve(int tbs_bits, int n_rep) const;

    std::map<std::pair<int, int>, BlerCurve> curves_;
};

/// Bits per PRB-subframe when one TB spans one PRB-subframe per repetition.
double spectral_efficiency(int tbs_bits, int n_rep);

}  // namespace ntnharq::bler
