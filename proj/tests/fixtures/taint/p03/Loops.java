package fx.p03;

import java.util.List;
import javax.servlet.http.HttpServletRequest;
import java.sql.Statement;

public class Loops {
    public void collect(HttpServletRequest req, Statement stmt, List<String> keys) throws Exception {
        String where = "";
        for (String k : keys) {
            String v = req.getParameter(k);
            where = where + " AND " + k + "=" + v;
        }
        stmt.executeQuery("SELECT * FROM t WHERE 1=1" + where);
    }

    public void shift(HttpServletRequest req, Statement stmt, int n) throws Exception {
        String a = "x";
        String b = "y";
        String c = req.getHeader("X-Token");
        int i = 0;
        while (i < n) {
            a = b;
            b = c;
            i++;
        }
        stmt.execute(a);
    }
}
