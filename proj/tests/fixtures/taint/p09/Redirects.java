package fx.p09;

import javax.servlet.http.HttpServletRequest;
import javax.servlet.http.HttpServletResponse;

public class Redirects {
    public void next(HttpServletRequest req, HttpServletResponse resp) throws Exception {
        String target = req.getParameter("next");
        if (target == null) {
            target = "/home";
        }
        resp.sendRedirect(target);
    }

    public void fixed(HttpServletRequest req, HttpServletResponse resp) throws Exception {
        String target = req.getParameter("next");
        resp.sendRedirect("/home");
    }
}
