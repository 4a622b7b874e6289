#include "gaborheat/error.hpp"

#include <iostream>
#include <mutex>

namespace gaborheat {
namespace {
std::mutex g_sink_mutex;
WarningSink g_sink;
}  // namespace

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

void set_warning_sink(WarningSink sink) {
  std::lock_guard lock(g_sink_mutex);
  g_sink = std::move(sink);
}

void warn(const std::string& message) {
  std::lock_guard lock(g_sink_mutex);
  if (g_sink)
    g_sink(message);
  else
    std::clog << "gaborheat: warning: " << message << '\n';
}

}  // namespace gaborheat
