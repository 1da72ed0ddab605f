#include "louvre/parallel.hpp"

namespace louvre {

unsigned resolve_jobs(unsigned jobs)
{
  if (jobs)
    return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace louvre
