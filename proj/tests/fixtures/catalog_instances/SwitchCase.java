class BufferMonitor {
  int state;

  void onChange() {
    switch(state) { case Buffer.FILE_CHANGED: alert(); break; default: break; }
  }

  void alert() {}
}

class Buffer {
  static final int FILE_CHANGED = 1;
}
