class IntegerGuard {
  void check(double d) {
    int id = (int)d; if (id == d) { mark(); }
  }

  void mark() {}
}
