#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

// All toolkit errors derive from Error. The category maps to the CLI exit
// code: usage errors exit 2, data errors 3, internal errors 4.
class Error : public std::runtime_error {
public:
    enum class Category { Usage = 2, Data = 3, Internal = 4 };

    Error(Category category, const std::string& msg)
        : std::runtime_error(msg), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

#define TRACELAB_DEFINE_ERROR(Name, Cat)                        \
    class Name : public Error {                                 \
    public:                                                     \
        explicit Name(const std::string& msg)                   \
            : Error(Error::Category::Cat, #Name ": " + msg) {}  \
    }

// trace model / ingest
TRACELAB_DEFINE_ERROR(ConflictingAssociation, Data);
TRACELAB_DEFINE_ERROR(MalformedLine, Data);
TRACELAB_DEFINE_ERROR(NegativeDuration, Data);
TRACELAB_DEFINE_ERROR(EmptyInput, Data);
TRACELAB_DEFINE_ERROR(EmptyTrace, Data);
// similarity
TRACELAB_DEFINE_ERROR(GapTooLarge, Data);
// encounters
TRACELAB_DEFINE_ERROR(DegenerateVariance, Data);
// er graph
TRACELAB_DEFINE_ERROR(InvalidDegree, Usage);
TRACELAB_DEFINE_ERROR(DegenerateReference, Data);
// stat fitting
TRACELAB_DEFINE_ERROR(InsufficientPoints, Data);
TRACELAB_DEFINE_ERROR(NonConvergence, Internal);
TRACELAB_DEFINE_ERROR(NegativeX, Usage);
// diffusion
TRACELAB_DEFINE_ERROR(UnknownSource, Usage);
// synth generator
TRACELAB_DEFINE_ERROR(InvalidSpec, Usage);
// general
TRACELAB_DEFINE_ERROR(UsageError, Usage);
TRACELAB_DEFINE_ERROR(IoError, Data);
TRACELAB_DEFINE_ERROR(InternalError, Internal);

#undef TRACELAB_DEFINE_ERROR

}  // namespace tracelab
