public class Parser {
    public int next(Token t) {
        consume(t);
        return t.value;
    }
}
