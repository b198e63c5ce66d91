class NanGuard {
  boolean isNaN(double d) {
    return d != d;
  }
}
