class PingPong {
  int limit;

  boolean run() {
    return ping(3);
  }

  boolean ping(int depth) {
    if (depth > limit && pong(depth)) {
      return true;
    }
    return false;
  }

  boolean pong(int depth) {
    if (depth > limit && ping(depth)) {
      return true;
    }
    return false;
  }
}
