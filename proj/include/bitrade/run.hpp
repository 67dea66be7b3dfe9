#pragma once
#include "bitrade/config.hpp"

#include <string>

#include <json.hpp>

namespace bitrade {

/// Results of one CLI run, ready for serialization. CSV payloads are empty
/// when the mode does not produce them.
struct OutputBundle {
    nlohmann::json summary;
    std::string trajectory_csv;
    std::string portrait_csv;
    std::string sweep_csv;
};

inline constexpr const char* kTrajectoryHeader = "t,p1,p2,alpha,beta,gamma,delta,zone,event";
inline constexpr const char* kPortraitHeader = "p1,p2,f1,f2,zone";
inline constexpr const char* kSweepHeader =
    "draw,zone,branch,Y1,Y2,q1,q2,rho,p1,p2,alpha,beta,gamma,delta,pay1,pay2,"
    "bf_pay1,bf_pay2,bf_tol1,bf_tol2,agree";

/// Execute the configured mode against the library.
OutputBundle run(const RunConfig& cfg);

/// Write summary.json and any CSV files into `out_dir` (created if needed).
void write_bundle(const OutputBundle& bundle, const std::string& out_dir);

/// Worker-thread cap for sweeps: BITRADE_THREADS, else hardware concurrency.
int worker_threads();

} // namespace bitrade
