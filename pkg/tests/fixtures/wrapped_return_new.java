public class Parser {
    public int next(Token t) {
        consume(t);
        if (t.valid()) {
            return t.value;
        }
    }
}
