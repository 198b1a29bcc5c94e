#pragma once

#include <stdexcept>
#include <string>

namespace mlqgate {

// Base class for every error raised by the toolkit. Loaders and metric
// functions throw; the evaluator converts metric-level errors into
// not-evaluable results, while the CLI maps load failures onto exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// File / format level.
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct ManifestMismatch : SchemaError { using SchemaError::SchemaError; };
struct CoverageError : SchemaError { using SchemaError::SchemaError; };

// Statistical preconditions.
struct DegenerateSample : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SchemaMismatch : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };

// Dataset-shape preconditions of the data metrics.
struct EmptyDataset : Error { using Error::Error; };
struct NoComparableColumns : Error { using Error::Error; };
struct NoNumericColumns : Error { using Error::Error; };
struct MissingSubsetColumn : Error { using Error::Error; };
struct MissingTimestampColumn : Error { using Error::Error; };
struct MissingLabelColumn : Error { using Error::Error; };
struct MissingGroupColumn : Error { using Error::Error; };
struct NonBinaryLabel : Error { using Error::Error; };
struct UnknownColumnInRule : Error { using Error::Error; };

// Model metrics.
struct NoLabeledRows : Error { using Error::Error; };
struct NotKFold : Error { using Error::Error; };
struct NotLeaveOneOut : Error { using Error::Error; };
struct TooFewFolds : Error { using Error::Error; };
struct ZeroCleanAccuracy : Error { using Error::Error; };
struct IdMismatch : Error { using Error::Error; };
struct NoEligibleGroups : Error { using Error::Error; };

// System metrics.
struct TooFewRows : Error { using Error::Error; };
struct MissingSupervisorFlags : Error { using Error::Error; };
struct MissingContextFlags : Error { using Error::Error; };
struct NoEntriesForPhase : Error { using Error::Error; };
struct UnknownItemId : Error { using Error::Error; };

// Quality model.
struct EmptyModelError : Error { using Error::Error; };

// Reference learners.
struct SingleClass : Error { using Error::Error; };
struct EmptyTraining : Error { using Error::Error; };
struct BadFoldCount : Error { using Error::Error; };

// Orchestration-level wrappers used by the CLI to pick exit codes.
struct ConfigError : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

}  // namespace mlqgate
