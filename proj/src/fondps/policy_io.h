#ifndef FONDPS_POLICY_IO_H
#define FONDPS_POLICY_IO_H

#include "partial.h"
#include "policy.h"
#include "task.h"

#include <string>
#include <variant>

namespace fondps {

/*
  Policy documents carry the hash of the task they were solved against,
  a kind tag, and mapping records ordered canonically (states by the
  state order, partial states by their literal order). Conditions are
  either {"state": name} for explicit-graph tasks, a full fact
  assignment for other tasks, or a partial assignment for partial
  policies. Actions are referenced by name.
*/
std::string write_policy(const Policy &policy);
std::string write_policy(const TaskPtr &task, const PartialPolicy &policy);

using AnyPolicy = std::variant<Policy, PartialPolicy>;

AnyPolicy read_policy(const TaskPtr &task, const std::string &json_text);
AnyPolicy read_policy_file(const TaskPtr &task, const std::string &path);

void write_text_file(const std::string &path, const std::string &content);

} // namespace fondps

#endif
