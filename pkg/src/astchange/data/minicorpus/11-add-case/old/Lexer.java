public class Lexer {
    private int pos = 0;

    public Token scan(char c) {
        switch (c) {
            case '(':
                return Token.LPAREN;
            case ')':
                return Token.RPAREN;
            default:
                pos++;
        }
        if (c == ' ') {
            skip();
        } else {
            pos++;
            mark(pos);
        }
        return null;
    }
}
