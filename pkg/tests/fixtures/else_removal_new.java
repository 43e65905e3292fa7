public class Service {
    private Foo foo;

    public void run(boolean ready) {
        if (ready) {
            start();
        }
        finish();
    }
}
