class Buffer {
  boolean isModified;
}

class Editor {
  Buffer buffer;

  void close() {
    if(buffer.isModified)
      save();
  }

  void save() {}
}
