#pragma once

#include <stdexcept>
#include <string>

namespace nym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NYM_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

NYM_DEFINE_ERROR(BranchCut);
NYM_DEFINE_ERROR(NonZeroMean);
NYM_DEFINE_ERROR(GaussMismatch);
NYM_DEFINE_ERROR(NotAbelian);
NYM_DEFINE_ERROR(NotRelative);
NYM_DEFINE_ERROR(DressingResidual);
NYM_DEFINE_ERROR(NotOnLevelSet);
NYM_DEFINE_ERROR(ShapeMismatch);
NYM_DEFINE_ERROR(ConfigError);

#undef NYM_DEFINE_ERROR

}  // namespace nym
