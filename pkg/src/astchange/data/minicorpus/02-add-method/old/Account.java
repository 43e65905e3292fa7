public class Account {
    private long balance = 0;
    private String owner;

    public Account(String owner) {
        this.owner = owner;
    }

    public void deposit(long amount) {
        if (amount > 0) {
            balance += amount;
        }
        audit.record(owner, amount);
    }

    public long getBalance() {
        return balance;
    }
}
