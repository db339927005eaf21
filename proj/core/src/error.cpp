#include "swarmopt/error.hpp"

namespace swarmopt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::ContinuousDimensionInGrid: return "ContinuousDimensionInGrid";
    case ErrorCode::PointOutOfSpace: return "PointOutOfSpace";
    case ErrorCode::UnitCoordinateOutOfRange: return "UnitCoordinateOutOfRange";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::AllCandidatesFailed: return "AllCandidatesFailed";
    case ErrorCode::BatchDegenerate: return "BatchDegenerate";
    case ErrorCode::GridExhausted: return "GridExhausted";
    case ErrorCode::NoCompletedTrials: return "NoCompletedTrials";
    case ErrorCode::UnknownTrial: return "UnknownTrial";
    case ErrorCode::DuplicateTell: return "DuplicateTell";
    case ErrorCode::PortClosed: return "PortClosed";
    case ErrorCode::WouldBlock: return "WouldBlock";
    case ErrorCode::AgentSpawnFailure: return "AgentSpawnFailure";
    case ErrorCode::ProtocolViolation: return "ProtocolViolation";
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnknownObjective: return "UnknownObjective";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace swarmopt
